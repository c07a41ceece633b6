"""The L^+ and L^- functionals, realized by their values on A_{r,s}.

Each functional matrix ``L`` is encoded as the map ``x -> [<l_ab, x>]_ab``.  On
a generator ``T^c_d`` the value is a fixed 3x3 scalar matrix built from R, and
the rule ``<l_ab, xy> = sum_k <l_ak, x><l_kb, y>`` makes the whole map an
algebra homomorphism A -> M_3.  Everything downstream (convolutions, the
g-matrix, the vector fields chi_ij and their star action) is computed from
these homomorphisms and the coproduct.
"""

from __future__ import annotations

import itertools
import operator
import random
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from . import linalg
from .algebra import (Algebra, AlgebraElement, Monomial, mono_word, poly_add_into,
                      random_element)
from .hopf import Hopf
from .report import CheckResult, run_check
from .rmatrix import LEX, RMatrix, T_LETTERS, build_R, invert
from .scalar import fmt


class EvaluationError(ArithmeticError):
    """The image of f or delta is not invertible at the chosen parameters."""


@dataclass(frozen=True)
class PairingConvention:
    """Discrete choices left open by the index conventions of the pairing.

    ``transpose_plus`` uses ``(R^+)^{ac}_{bd} = c+ R^{ca}_{db}``; otherwise the
    unflipped ``c+ R^{ac}_{bd}``.  ``minus_uses_inverse`` builds R^- from R^-1
    rather than from R.  ``star_leg`` names the Sweedler leg the functional
    consumes in the star action.
    """

    transpose_plus: bool = True
    minus_uses_inverse: bool = True
    star_leg: str = "second"
    cplus: object = 1
    cminus: object = 1

    def __post_init__(self):
        if self.star_leg not in ("first", "second"):
            raise ValueError(f"star_leg must be 'first' or 'second', not {self.star_leg!r}")
        if self.cplus == 0 or self.cminus == 0:
            raise ValueError("c+ and c- must be nonzero")

    def encode(self) -> str:
        return f"tp={int(self.transpose_plus)},inv={int(self.minus_uses_inverse)},leg={self.star_leg}"

    @classmethod
    def decode(cls, text: str) -> "PairingConvention":
        if text in ("default", ""):
            return cls()
        parts = text.split(",")
        if not all("=" in part for part in parts):
            raise ValueError(f"expected key=value pairs such as 'tp=1,inv=1,leg=second', got {text!r}")
        fields = dict(part.split("=", 1) for part in parts)
        unknown = set(fields) - {"tp", "inv", "leg"}
        if unknown:
            raise ValueError(f"unknown convention fields: {sorted(unknown)}")
        for key in ("tp", "inv"):
            if fields.get(key, "1") not in ("0", "1"):
                raise ValueError(f"{key} must be 0 or 1")
        return cls(transpose_plus=fields.get("tp", "1") == "1",
                   minus_uses_inverse=fields.get("inv", "1") == "1",
                   star_leg=fields.get("leg", "second"))

    @classmethod
    def all_discrete(cls) -> List["PairingConvention"]:
        return [cls(tp, inv, leg) for tp, inv, leg in
                itertools.product((True, False), (True, False), ("second", "first"))]


DEFAULT = PairingConvention()


@dataclass(frozen=True)
class Functional:
    """Matrix-entry descriptor: ``l^{sign}_{ij}``, optionally precomposed with S, or the counit."""

    kind: str  # "plus" | "minus" | "counit"
    i: int = 0
    j: int = 0
    twisted: bool = False


class Pairing:
    """Values of L^+ and L^- on A_{r,s} for one :class:`PairingConvention`."""

    def __init__(self, alg: Algebra, conv: PairingConvention = DEFAULT, hopf: Hopf | None = None,
                 R: RMatrix | None = None):
        self.alg = alg
        self.conv = conv
        self.hopf = hopf or Hopf(alg)
        P = alg.params
        self.R = R or build_R(P)
        self.Rinv = invert(self.R)
        self.one = P.one
        self.zero = P.zero
        self.I = linalg.identity(3, P.one, P.zero)
        cplus, cminus = alg.coerce(conv.cplus), alg.coerce(conv.cminus)
        base_minus = self.Rinv if conv.minus_uses_inverse else self.R
        self._images = {"plus": {}, "minus": {}}
        for c, d in itertools.product(range(3), repeat=2):
            letter = T_LETTERS[c][d]
            if letter is None:
                continue
            plus = linalg.zeros(3, zero=P.zero)
            minus = linalg.zeros(3, zero=P.zero)
            for a, b in itertools.product(range(3), repeat=2):
                if conv.transpose_plus:
                    plus[a, b] = self.R.component(c, a, d, b) * cplus
                else:
                    plus[a, b] = self.R.component(a, c, b, d) * cplus
                minus[a, b] = base_minus.component(a, c, b, d) * cminus
            self._images["plus"][letter] = plus
            self._images["minus"][letter] = minus
        for sign in ("plus", "minus"):
            im = self._images[sign]
            try:
                im["F"] = linalg.inverse(im["f"], P.one)
            except linalg.SingularMatrixError as exc:
                raise EvaluationError(f"image of f under L^{sign} is singular") from exc
            det = im["a"] @ im["d"] - (im["b"] @ im["c"]) * alg.rpow(-1)
            try:
                im["delta_inv"] = linalg.inverse(det, P.one)
            except linalg.SingularMatrixError as exc:
                raise EvaluationError(f"image of delta under L^{sign} is singular") from exc
        self._mono_cache: Dict[Tuple[str, Monomial], np.ndarray] = {}
        self._s_cache: Dict[Tuple[str, int, Monomial], np.ndarray] = {}
        self._g_cache: Dict[Tuple[int, Monomial], np.ndarray] = {}

    # -- evaluation ----------------------------------------------------------
    def generator_image(self, sign: str, letter: str) -> np.ndarray:
        return self._images[sign][letter]

    def _eval_mono(self, sign: str, mon: Monomial) -> np.ndarray:
        key = (sign, mon)
        if key not in self._mono_cache:
            out = self.I
            for x in mono_word(mon):
                out = out @ self._images[sign][x]
            self._mono_cache[key] = out
        return self._mono_cache[key]

    def evaluate(self, sign: str, x: AlgebraElement) -> np.ndarray:
        out = linalg.zeros(3, zero=self.zero)
        for mon, c in x.poly.items():
            out = out + self._eval_mono(sign, mon) * c
        if x.p:
            dinv = self._images[sign]["delta_inv"]
            for _ in range(x.p):
                out = out @ dinv
        return out

    def eval_plus(self, x: AlgebraElement) -> np.ndarray:
        return self.evaluate("plus", x)

    def eval_minus(self, x: AlgebraElement) -> np.ndarray:
        return self.evaluate("minus", x)

    def eval_twisted(self, sign: str, p: int, mon: Monomial) -> np.ndarray:
        """Value on S(delta^-p mon), cached per Sweedler leg."""
        key = (sign, p, mon)
        if key not in self._s_cache:
            leg = AlgebraElement(self.alg, p, {mon: self.one})
            self._s_cache[key] = self.evaluate(sign, self.hopf.antipode(leg))
        return self._s_cache[key]

    def value(self, u: Functional, x: AlgebraElement):
        if u.kind == "counit":
            return self.hopf.counit(self.hopf.antipode(x) if u.twisted else x)
        y = self.hopf.antipode(x) if u.twisted else x
        return self.evaluate(u.kind, y)[u.i, u.j]

    def convolve(self, u: Functional, v: Functional, x: AlgebraElement):
        """(u v)(x) = sum u(x_(1)) v(x_(2))."""
        total = self.zero
        for (x1, x2), coef in self.hopf.coproduct(x).legs():
            total = total + self.value(u, x1) * self.value(v, x2) * coef
        return total

    # -- g = S(L^+) L^- and the vector fields --------------------------------
    def _g_mono(self, p: int, mon: Monomial) -> np.ndarray:
        key = (p, mon)
        if key not in self._g_cache:
            out = linalg.zeros(3, zero=self.zero)
            dx = self.hopf.coproduct(AlgebraElement(self.alg, p, {mon: self.one}))
            for ((p1, m1), (p2, m2)), coef in dx.terms.items():
                out = out + (self.eval_twisted("plus", p1, m1) @ self._eval_leg("minus", p2, m2)) * coef
            self._g_cache[key] = out
        return self._g_cache[key]

    def _eval_leg(self, sign, p, mon):
        return self.evaluate(sign, AlgebraElement(self.alg, p, {mon: self.one}))

    def g_matrix(self, x: AlgebraElement) -> np.ndarray:
        out = linalg.zeros(3, zero=self.zero)
        for mon, c in x.poly.items():
            out = out + self._g_mono(x.p, mon) * c
        return out

    def chi_matrix(self, x: AlgebraElement) -> np.ndarray:
        return self.g_matrix(x) - self.I * self.hopf.counit(x)

    def chi_value(self, i: int, j: int, x: AlgebraElement):
        return self.chi_matrix(x)[i, j]

    def star_all(self, x: AlgebraElement) -> List[List[AlgebraElement]]:
        """chi_ij * x for all i, j at once."""
        A = self.alg
        out = [[A.zero for _ in range(3)] for _ in range(3)]
        acc = [[{} for _ in range(3)] for _ in range(3)]
        for (x1, x2), coef in self.hopf.coproduct(x).legs():
            if self.conv.star_leg == "second":
                keep, feed = x1, x2
            else:
                keep, feed = x2, x1
            chi = self.chi_matrix(feed)
            for i, j in itertools.product(range(3), repeat=2):
                if chi[i, j] != 0:
                    acc[i][j].setdefault(keep.p, []).append((keep, chi[i, j] * coef))
        for i, j in itertools.product(range(3), repeat=2):
            total = A.zero
            for p, items in acc[i][j].items():
                poly = {}
                for el, c in items:
                    poly_add_into(poly, el.poly, c)
                total = total + AlgebraElement(A, p, poly)
            out[i][j] = total
        return out

    def star(self, i: int, j: int, x: AlgebraElement) -> AlgebraElement:
        return self.star_all(x)[i][j]

    # -- verification --------------------------------------------------------
    def check_representation(self, rng: random.Random | None = None, n_pairs: int = 100) -> List[CheckResult]:
        A = self.alg
        rng = rng or random.Random(0)
        out = []
        for sign in ("plus", "minus"):
            images = dict(self._images[sign])
            rels = A.relations() + [("f f^-1 - 1", [(A.one_c, ("f", "F")), (-A.one_c, ())])]
            out.append(run_check(
                f"L^{'+' if sign == 'plus' else '-'} kills relations", rels,
                lambda rel, im=images: linalg.is_zero(
                    A.evaluate_relation(rel[1], im, self.I, linalg.zeros(3, zero=self.zero), operator.matmul)),
                describe=lambda rel: rel[0]))
        pairs = [(random_element(A, rng, 3, 2, 1), random_element(A, rng, 3, 2, 1)) for _ in range(n_pairs)]
        for sign in ("plus", "minus"):
            out.append(run_check(
                f"L^{'+' if sign == 'plus' else '-'} multiplicative", pairs,
                lambda xy, sg=sign: linalg.equal(self.evaluate(sg, xy[0] * xy[1]),
                                                 self.evaluate(sg, xy[0]) @ self.evaluate(sg, xy[1])),
                describe=lambda xy: f"x={xy[0]}, y={xy[1]}"))
        return out

    def is_representation(self) -> bool:
        """Both L^+ and L^- kill every defining relation (generator-level test)."""
        A = self.alg
        zero = linalg.zeros(3, zero=self.zero)
        return all(linalg.is_zero(A.evaluate_relation(terms, self._images[sign], self.I, zero, operator.matmul))
                   for sign in ("plus", "minus") for _, terms in A.relations())

    def rll_sides(self, x: AlgebraElement, kinds: Tuple[str, str], R: RMatrix | None = None):
        """(R L2 L1)(x) and (L1 L2 R)(x) as 9x9 matrices for the pair of functional kinds.

        For kinds (u, v) the relation is R L^u_2 L^v_1 = L^v_1 L^u_2 R.
        """
        u, v = kinds
        Rt = (R or self.R).tensor_lex()
        left = linalg.zeros(9, zero=self.zero)
        right = linalg.zeros(9, zero=self.zero)
        for (x1, x2), coef in self.hopf.coproduct(x).legs():
            # (L^u_2 L^v_1)^{ij}_{mn} = l^u_{jn} l^v_{im}
            left = left + np.kron(self.evaluate(v, x2), self.evaluate(u, x1)) * coef
            # (L^v_1 L^u_2)^{ij}_{mn} = l^v_{im} l^u_{jn}
            right = right + np.kron(self.evaluate(v, x1), self.evaluate(u, x2)) * coef
        return Rt @ left, right @ Rt

    def check_rll(self, degree_bound: int = 3, R: RMatrix | None = None) -> List[CheckResult]:
        """The three RLL relations on every monomial of degree <= degree_bound.

        ``R`` replaces the intertwiner on both sides; the functionals themselves
        are unchanged.
        """
        if degree_bound < 1:
            raise ValueError("degree_bound must be at least 1")
        monos = monomials_up_to(degree_bound)
        out = []
        for kinds, label in ((("plus", "plus"), "R L+2 L+1 = L+1 L+2 R"),
                             (("minus", "minus"), "R L-2 L-1 = L-1 L-2 R"),
                             (("plus", "minus"), "R L+2 L-1 = L-1 L+2 R")):
            out.append(run_check(
                label, monos,
                lambda mon, k=kinds: linalg.equal(*self.rll_sides(self.alg.monomial(mon), k, R)),
                describe=lambda mon, k=kinds: self._rll_counterexample(mon, k, R)))
        return out

    def _rll_counterexample(self, mon: Monomial, kinds, R) -> str:
        x = self.alg.monomial(mon)
        left, right = self.rll_sides(x, kinds, R)
        for a, b in itertools.product(range(9), repeat=2):
            if left[a, b] != right[a, b]:
                (i, j), (m, n) = LEX[a], LEX[b]
                return (f"x = {x}, entry ({i}{j}),({m}{n}): lhs {fmt(left[a, b])}, "
                        f"rhs {fmt(right[a, b])}")
        return f"x = {x}"

    def pairing_table(self) -> Dict[str, Dict[str, List[List[str]]]]:
        """<l^{+-}_ij, g> for every generator g, as canonical text."""
        table = {}
        for sign in ("plus", "minus"):
            table[sign] = {}
            for name, g in self.alg.generators().items():
                table[sign][name] = [[fmt(v) for v in row] for row in self.evaluate(sign, g)]
        return table


def monomials_up_to(bound: int) -> List[Monomial]:
    """All normal monomials with |k| + i + j + l + m <= bound, in degree-lex order."""
    out = []
    for k in range(-bound, bound + 1):
        rest = bound - abs(k)
        for i, j, l, m in itertools.product(range(rest + 1), repeat=4):
            if i + j + l + m <= rest:
                out.append((k, i, j, l, m))
    return sorted(out, key=lambda mn: (abs(mn[0]) + sum(mn[1:]), mn))
