"""Exact dense linear algebra on numpy object arrays of field elements."""

from __future__ import annotations

from typing import Dict, Hashable, List, Sequence

import numpy as np


class SingularMatrixError(ArithmeticError):
    pass


def zeros(n: int, m: int | None = None, zero=0) -> np.ndarray:
    out = np.empty((n, n if m is None else m), dtype=object)
    out.fill(zero)
    return out


def identity(n: int, one=1, zero=0) -> np.ndarray:
    out = zeros(n, zero=zero)
    for i in range(n):
        out[i, i] = one
    return out


def is_zero(mat: np.ndarray) -> bool:
    return all(x == 0 for x in mat.flat)


def equal(x: np.ndarray, y: np.ndarray) -> bool:
    return x.shape == y.shape and all(a == b for a, b in zip(x.flat, y.flat))


def inverse(mat: np.ndarray, one=1) -> np.ndarray:
    """Gauss-Jordan inverse over an exact field."""
    n = mat.shape[0]
    work = np.concatenate([mat.copy(), identity(n, one, one - one)], axis=1)
    for col in range(n):
        pivot = next((row for row in range(col, n) if work[row, col] != 0), None)
        if pivot is None:
            raise SingularMatrixError(f"matrix is singular (column {col})")
        if pivot != col:
            work[[col, pivot]] = work[[pivot, col]]
        inv_p = one / work[col, col]
        work[col] = [x * inv_p for x in work[col]]
        for row in range(n):
            if row != col and work[row, col] != 0:
                factor = work[row, col]
                work[row] = [x - factor * y for x, y in zip(work[row], work[col])]
    return work[:, n:]


def rank(vectors: Sequence[Dict[Hashable, object]]) -> int:
    """Rank of sparse vectors (coordinate -> field element)."""
    basis: List[tuple] = []  # (pivot coordinate, normalized vector)
    for vec in vectors:
        v = {k: c for k, c in vec.items() if c != 0}
        for pivot, b in basis:
            if pivot in v:
                factor = v[pivot]
                for k, c in b.items():
                    w = v.get(k, 0) - factor * c
                    if w == 0:
                        v.pop(k, None)
                    else:
                        v[k] = w
        if v:
            pivot = min(v, key=repr)
            inv_p = 1 / v[pivot] if not hasattr(v[pivot], "inv") else v[pivot].inv()
            basis.append((pivot, {k: c * inv_p for k, c in v.items()}))
    return len(basis)
