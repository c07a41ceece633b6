"""The 9x9 R-matrix of A_{r,s}, its inverse, the Yang-Baxter equation and RTT.

The printed matrix ``M`` is stored in the block basis order
``(00),(01),(02),(10),(20),(11),(12),(21),(22)``.  Tensor components
``R^{ij}_{kl}`` are read off ``M`` according to ``reading``:

* ``"transposed"`` (default): ``R^{ij}_{kl} = M[(kl), (ij)]``
* ``"literal"``: ``R^{ij}_{kl} = M[(ij), (kl)]``

Only the transposed reading turns ``R T1 T2 = T2 T1 R`` into the defining
relations of the algebra (the literal one yields them with r -> 1/r in the
GL(2) block), and only it makes the L-functionals representations.
Leg placement for YBE and RTT is done with explicit Kronecker products in the
lexicographic basis ``e_i (x) e_j``.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Tuple

import numpy as np

from . import linalg
from .algebra import Algebra, AlgebraElement, poly_is_zero
from .report import CheckResult
from .scalar import Params, fmt

BASIS: List[Tuple[int, int]] = [(0, 0), (0, 1), (0, 2), (1, 0), (2, 0), (1, 1), (1, 2), (2, 1), (2, 2)]
POS = {pair: n for n, pair in enumerate(BASIS)}
LEX = [(i, j) for i in range(3) for j in range(3)]
READINGS = ("transposed", "literal")

# letters of the generator matrix T^i_j, zero entries are None
T_LETTERS = [["f", None, None], [None, "a", "b"], [None, "c", "d"]]


class RMatrix:
    def __init__(self, M: np.ndarray, params: Params, reading: str = "transposed"):
        if reading not in READINGS:
            raise ValueError(f"unknown reading {reading!r}")
        self.M = M
        self.params = params
        self.reading = reading

    def entry(self, row: Tuple[int, int], col: Tuple[int, int]):
        return self.M[POS[row], POS[col]]

    def component(self, i: int, j: int, k: int, l: int):
        """R^{ij}_{kl}."""
        if self.reading == "literal":
            return self.M[POS[(i, j)], POS[(k, l)]]
        return self.M[POS[(k, l)], POS[(i, j)]]

    def tensor_lex(self) -> np.ndarray:
        """9x9 array with [(ij),(kl)] = R^{ij}_{kl}, lexicographic basis."""
        out = linalg.zeros(9, zero=self.params.zero)
        for a, (i, j) in enumerate(LEX):
            for b, (k, l) in enumerate(LEX):
                out[a, b] = self.component(i, j, k, l)
        return out

    def with_entry(self, row, col, value) -> "RMatrix":
        M = self.M.copy()
        M[POS[row], POS[col]] = value
        return RMatrix(M, self.params, self.reading)

    def table(self) -> List[List[str]]:
        return [[fmt(x) for x in row] for row in self.M]

    def __eq__(self, other):
        return isinstance(other, RMatrix) and linalg.equal(self.M, other.M)

    __hash__ = None


def build_R(params: Params | None = None, reading: str = "transposed") -> RMatrix:
    P = params or Params.symbolic()
    r, s, one = P.r, P.s, P.one
    lam = P.lam
    M = linalg.zeros(9, zero=P.zero)
    entries = {
        ((0, 0), (0, 0)): r,
        ((0, 1), (0, 1)): one / s,
        ((0, 2), (0, 2)): one,
        ((1, 0), (0, 1)): lam,
        ((2, 0), (0, 2)): lam,
        ((1, 0), (1, 0)): s,
        ((2, 0), (2, 0)): one,
        ((1, 1), (1, 1)): r,
        ((1, 2), (1, 2)): one,
        ((2, 1), (1, 2)): lam,
        ((2, 1), (2, 1)): one,
        ((2, 2), (2, 2)): r,
    }
    for (row, col), v in entries.items():
        M[POS[row], POS[col]] = v
    return RMatrix(M, P, reading)


def identity_R(params: Params | None = None, reading: str = "transposed") -> RMatrix:
    P = params or Params.symbolic()
    return RMatrix(linalg.identity(9, P.one, P.zero), P, reading)


def invert(R: RMatrix) -> RMatrix:
    """Exact inverse; raises :class:`linalg.SingularMatrixError` on singular input."""
    return RMatrix(linalg.inverse(R.M, R.params.one), R.params, R.reading)


def _perm_to_lex() -> np.ndarray:
    """Permutation Q with M_lex = Q M Q^T."""
    Q = linalg.zeros(9)
    for a, pair in enumerate(LEX):
        Q[a, POS[pair]] = 1
    return Q


def _swap23() -> np.ndarray:
    P = linalg.zeros(27)
    for i, j, k in itertools.product(range(3), repeat=3):
        P[9 * i + 3 * k + j, 9 * i + 3 * j + k] = 1
    return P


def check_ybe(R: RMatrix) -> bool:
    """R12 R13 R23 == R23 R13 R12 for the printed matrix as an operator on V (x) V."""
    P = R.params
    Q = _perm_to_lex()
    Rl = Q @ R.M @ Q.T
    I3 = linalg.identity(3, P.one, P.zero)
    R12 = np.kron(Rl, I3)
    R23 = np.kron(I3, Rl)
    S = _swap23()
    R13 = S @ R12 @ S
    return linalg.equal(R12 @ R13 @ R23, R23 @ R13 @ R12)


def rtt_entries(R: RMatrix) -> Dict[Tuple[Tuple[int, int], Tuple[int, int]], Dict[Tuple[str, str], object]]:
    """Entries of R T1 T2 - T2 T1 R as free (unreduced) combinations of two-letter words."""
    Rt = R.tensor_lex()
    zero = R.params.zero
    out = {}
    for (i, j), (m, n) in itertools.product(LEX, LEX):
        words: Dict[Tuple[str, str], object] = {}

        def acc(word, c):
            if c == 0 or None in word:
                return
            words[word] = words.get(word, zero) + c

        for k, l in LEX:
            # (R T1 T2)^{ij}_{mn} = R^{ij}_{kl} T^k_m T^l_n
            acc((T_LETTERS[k][m], T_LETTERS[l][n]), Rt[LEX.index((i, j)), LEX.index((k, l))])
            # (T2 T1 R)^{ij}_{mn} = T^j_l T^i_k R^{kl}_{mn}
            acc((T_LETTERS[j][l], T_LETTERS[i][k]), -Rt[LEX.index((k, l)), LEX.index((m, n))])
        out[((i, j), (m, n))] = {w: c for w, c in words.items() if c != 0}
    return out


def _relation_key(words: Dict) -> Tuple:
    first = min(words)
    lead = words[first]
    return tuple(sorted((w, fmt(c / lead)) for w, c in words.items()))


def check_rtt(alg: Algebra, R: RMatrix | None = None) -> CheckResult:
    """All 81 entries of R T1 T2 - T2 T1 R reduce to zero in A, and the relations
    they encode span the same space as the defining relations."""
    R = R or build_R(alg.params)
    entries = rtt_entries(R)
    failures = []
    extracted = {}
    for idx, words in entries.items():
        if not words:
            continue
        extracted.setdefault(_relation_key(words), words)
        reduced = alg.straighten_words(dict(words))
        if not poly_is_zero(reduced):
            failures.append((idx, words))
    defining = [{w: c for c, w in terms} for _, terms in alg.relations()]
    ext = list(extracted.values())
    r_ext, r_def, r_all = linalg.rank(ext), linalg.rank(defining), linalg.rank(ext + defining)
    equivalent = r_ext == r_def == r_all
    # a basis of the extracted span, each relation scaled so its first word has coefficient 1
    basis: List[Dict] = []
    for words in sorted(ext, key=lambda w: (len(w), sorted(w))):
        if linalg.rank(basis + [words]) > len(basis):
            basis.append(words)
    relations_text = []
    for words in basis:
        lead = words[min(words)]
        relations_text.append(" + ".join(f"({fmt(c / lead)}) {''.join(w)}" for w, c in sorted(words.items())))
    counter = None
    if failures:
        (ij, mn), words = failures[0]
        counter = f"entry {ij},{mn}: " + " + ".join(f"({fmt(c)}) {''.join(w)}" for w, c in words.items())
    elif not equivalent:
        counter = f"span mismatch: rank extracted={r_ext}, defining={r_def}, union={r_all}"
    return CheckResult(
        "RTT relations", not failures and equivalent, 81, counter,
        details={"nonzero_entries_reducing_to_zero": 81 - len(failures),
                 "distinct_relations": relations_text,
                 "rank_extracted": r_ext, "rank_defining": r_def, "rank_union": r_all},
    )


def generator_matrix(alg: Algebra) -> List[List[AlgebraElement]]:
    return [[alg.gen(x) if x else alg.zero for x in row] for row in T_LETTERS]


def decouple_f_sector(R: RMatrix) -> RMatrix:
    """R with the two lambda entries linking the f row to the b, c rows removed.

    Those entries multiply only vanishing entries of T, so RTT and the pairing
    never see them; the mixed RLL relation does.
    """
    zero = R.params.zero
    return R.with_entry((1, 0), (0, 1), zero).with_entry((2, 0), (0, 2), zero)
