"""Coproduct, counit and antipode of A_{r,s}, and checks of the Hopf axioms.

The coproduct is the matrix coproduct of T = [[f,0,0],[0,a,b],[0,c,d]] and
lands in :class:`Tensor`, an element of the n-fold tensor power of A.  Legs
are pairs ``(p, monomial)`` meaning ``delta^-p * monomial``; products are taken
leg by leg with no braiding.
"""

from __future__ import annotations

import itertools
import random
from typing import Callable, Dict, Iterable, List, Tuple

from .algebra import (UNIT, Algebra, AlgebraElement, Monomial, Poly, mono_key, mono_str,
                      poly_add_into, random_monomial)
from .report import CheckResult, run_check
from .scalar import fmt

Leg = Tuple[int, Monomial]
TensorKey = Tuple[Leg, ...]


class Tensor:
    """Element of A^{(x) n} in the basis of tensor products of normal monomials."""

    __slots__ = ("alg", "n", "terms")

    def __init__(self, alg: Algebra, n: int, terms: Dict[TensorKey, object] | None = None):
        self.alg = alg
        self.n = n
        self.terms: Dict[TensorKey, object] = {k: c for k, c in (terms or {}).items() if c != 0}

    @classmethod
    def pure(cls, *legs: AlgebraElement) -> "Tensor":
        """x_1 (x) x_2 (x) ... for algebra elements."""
        alg = legs[0].alg
        terms: Dict[TensorKey, object] = {}
        for combo in itertools.product(*[list(x.poly.items()) for x in legs]):
            key = tuple((x.p, mon) for x, (mon, _) in zip(legs, combo))
            coef = alg.one_c
            for _, c in combo:
                coef = coef * c
            _acc(terms, key, coef)
        return cls(alg, len(legs), terms)

    def __add__(self, other: "Tensor") -> "Tensor":
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return Tensor(self.alg, self.n, out)

    def __neg__(self):
        return Tensor(self.alg, self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Tensor":
        return Tensor(self.alg, self.n, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Tensor):
            return self.scale(other)
        alg = self.alg
        out: Dict[TensorKey, object] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                legs = [[((l1[0] + l2[0], mon), c) for mon, c in alg.mul_mono(l1[1], l2[1]).items()]
                        for l1, l2 in zip(k1, k2)]
                base = c1 * c2
                for combo in itertools.product(*legs):
                    coef = base
                    for _, c in combo:
                        coef = coef * c
                    _acc(out, tuple(leg for leg, _ in combo), coef)
        return Tensor(alg, self.n, out)

    __rmul__ = scale

    def normalized(self) -> Dict[Tuple[Monomial, ...], object]:
        """Numerators after bringing every leg to its maximal delta power."""
        if not self.terms:
            return {}
        pmax = [max(k[i][0] for k in self.terms) for i in range(self.n)]
        out: Dict[Tuple[Monomial, ...], object] = {}
        for key, coef in self.terms.items():
            legs = [list(self.alg.raise_p({mon: self.alg.one_c}, pmax[i] - p).items())
                    for i, (p, mon) in enumerate(key)]
            for combo in itertools.product(*legs):
                c = coef
                for _, v in combo:
                    c = c * v
                _acc(out, tuple(m for m, _ in combo), c)
        return out

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.normalized().values())

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, Tensor):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def legs(self) -> Iterable[Tuple[Tuple[AlgebraElement, ...], object]]:
        """Iterate Sweedler terms as (tuple of algebra elements, coefficient)."""
        for key, coef in self.terms.items():
            yield tuple(AlgebraElement(self.alg, p, {mon: self.alg.one_c}) for p, mon in key), coef

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, coef in sorted(self.terms.items(),
                                key=lambda t: tuple((leg[0], mono_key(leg[1])) for leg in t[0])):
            legs = " ⊗ ".join(mono_str(m) if p == 0 else f"δ^-{p} {mono_str(m)}" for p, m in key)
            parts.append(f"{legs} : {fmt(coef)}")
        return " + ".join(parts)

    __repr__ = __str__


def _acc(d, key, c):
    if key in d:
        v = d[key] + c
        if v == 0:
            del d[key]
        else:
            d[key] = v
    elif c != 0:
        d[key] = c


class Hopf:
    """Delta, epsilon and S on a fixed :class:`Algebra`, with per-monomial caches."""

    def __init__(self, alg: Algebra):
        self.alg = alg
        A = alg
        self._gen_cop = {
            "f": Tensor.pure(A.f, A.f),
            "F": Tensor.pure(A.finv, A.finv),
            "a": Tensor.pure(A.a, A.a) + Tensor.pure(A.b, A.c),
            "b": Tensor.pure(A.a, A.b) + Tensor.pure(A.b, A.d),
            "c": Tensor.pure(A.c, A.a) + Tensor.pure(A.d, A.c),
            "d": Tensor.pure(A.c, A.b) + Tensor.pure(A.d, A.d),
        }
        self._gen_anti = {
            "f": A.finv,
            "F": A.f,
            "a": A.delta_inv * A.d,
            "b": (A.delta_inv * A.b).scale(-A.rpow(1)),
            "c": (A.delta_inv * A.c).scale(-A.rpow(-1)),
            "d": A.delta_inv * A.a,
        }
        self._gen_anti_inv = {
            "f": A.finv,
            "F": A.f,
            "a": A.delta_inv * A.d,
            "b": (A.delta_inv * A.b).scale(-A.rpow(-1)),
            "c": (A.delta_inv * A.c).scale(-A.rpow(1)),
            "d": A.delta_inv * A.a,
        }
        self._cop_cache: Dict[Monomial, Tensor] = {}
        self._anti_cache: Dict[Monomial, AlgebraElement] = {}
        self._anti_inv_cache: Dict[Monomial, AlgebraElement] = {}

    # -- structure maps -------------------------------------------------------
    def coproduct_mono(self, mon: Monomial) -> Tensor:
        if mon in self._cop_cache:
            return self._cop_cache[mon]
        A = self.alg
        if mon == UNIT:
            out = Tensor.pure(A.one, A.one)
        else:
            # peel the last letter: Delta(w x) = Delta(w) Delta(x)
            k, i, j, l, m = mon
            if m:
                prev, x = (k, i, j, l, m - 1), "d"
            elif l:
                prev, x = (k, i, j, l - 1, 0), "c"
            elif j:
                prev, x = (k, i, j - 1, 0, 0), "b"
            elif i:
                prev, x = (k, i - 1, 0, 0, 0), "a"
            elif k > 0:
                prev, x = (k - 1, 0, 0, 0, 0), "f"
            else:
                prev, x = (k + 1, 0, 0, 0, 0), "F"
            out = self.coproduct_mono(prev) * self._gen_cop[x]
        self._cop_cache[mon] = out
        return out

    def coproduct(self, x: AlgebraElement) -> Tensor:
        out: Dict[TensorKey, object] = {}
        for mon, c in x.poly.items():
            for key, v in self.coproduct_mono(mon).terms.items():
                # Delta(delta^-p) = delta^-p (x) delta^-p
                _acc(out, tuple((p + x.p, mm) for p, mm in key), v * c)
        return Tensor(self.alg, 2, out)

    def counit(self, x: AlgebraElement):
        total = self.alg.zero_c
        for mon, c in x.poly.items():
            if mon[2] == 0 and mon[3] == 0:
                total = total + c
        return total

    def _anti_mono(self, mon: Monomial, table, cache) -> AlgebraElement:
        if mon in cache:
            return cache[mon]
        A = self.alg
        out = A.one
        k, i, j, l, m = mon
        # anti-multiplicative: reverse the word f^k a^i b^j c^l d^m
        for letter, e in (("d", m), ("c", l), ("b", j), ("a", i)):
            for _ in range(e):
                out = out * table[letter]
        fl = "f" if k > 0 else "F"
        for _ in range(abs(k)):
            out = out * table[fl]
        cache[mon] = out
        return out

    def antipode_mono(self, mon: Monomial) -> AlgebraElement:
        return self._anti_mono(mon, self._gen_anti, self._anti_cache)

    def _anti_apply(self, x: AlgebraElement, mono_fn) -> AlgebraElement:
        A = self.alg
        total = A.zero
        for mon, c in x.poly.items():
            total = total + mono_fn(mon).scale(c)
        if x.p:
            # S(delta^-1) = S^-1(delta^-1) = delta
            total = A.element(A.raise_p(total.poly, x.p), total.p)
        return total

    def antipode(self, x: AlgebraElement) -> AlgebraElement:
        return self._anti_apply(x, self.antipode_mono)

    def antipode_inverse(self, x: AlgebraElement) -> AlgebraElement:
        return self._anti_apply(x, lambda mon: self._anti_mono(mon, self._gen_anti_inv, self._anti_inv_cache))

    # -- derived maps on tensors ---------------------------------------------
    def map_leg(self, t: Tensor, leg: int, fn: Callable[[AlgebraElement], Tensor]) -> Tensor:
        """Apply a map A -> A^{(x) k} on one leg, giving an (n + k - 1)-leg tensor."""
        out = None
        for legs, coef in t.legs():
            image = fn(legs[leg])
            before = [Tensor.pure(x) for x in legs[:leg]]
            after = [Tensor.pure(x) for x in legs[leg + 1:]]
            piece = _tensor_concat(before + [image] + after).scale(coef)
            out = piece if out is None else out + piece
        if out is None:
            return Tensor(self.alg, t.n)
        return out

    def multiply_legs(self, t: Tensor, left: Callable = None, right: Callable = None) -> AlgebraElement:
        """m((left (x) right) t) for a 2-leg tensor."""
        A = self.alg
        total = A.zero
        for (x1, x2), coef in t.legs():
            y1 = left(x1) if left else x1
            y2 = right(x2) if right else x2
            total = total + (y1 * y2).scale(coef)
        return total

    def counit_leg(self, t: Tensor, leg: int) -> AlgebraElement:
        A = self.alg
        total = A.zero
        for legs, coef in t.legs():
            other = legs[1 - leg]
            total = total + other.scale(coef * self.counit(legs[leg]))
        return total

    # -- verification -------------------------------------------------------
    def check_hopf_axioms(self, sample: List[AlgebraElement]) -> List[CheckResult]:
        A = self.alg

        def coassoc(x):
            dx = self.coproduct(x)
            return self.map_leg(dx, 0, self.coproduct) == self.map_leg(dx, 1, self.coproduct)

        def counit_left(x):
            return self.counit_leg(self.coproduct(x), 0) == x

        def counit_right(x):
            return self.counit_leg(self.coproduct(x), 1) == x

        def antipode_left(x):
            return self.multiply_legs(self.coproduct(x), left=self.antipode) == A.scalar(self.counit(x))

        def antipode_right(x):
            return self.multiply_legs(self.coproduct(x), right=self.antipode) == A.scalar(self.counit(x))

        results = [
            run_check("coassociativity", sample, coassoc),
            run_check("counit (eps (x) id)", sample, counit_left),
            run_check("counit (id (x) eps)", sample, counit_right),
            run_check("antipode m(S (x) id)", sample, antipode_left),
            run_check("antipode m(id (x) S)", sample, antipode_right),
        ]
        results.extend(self.check_bialgebra_relations())
        return results

    def check_bialgebra_relations(self) -> List[CheckResult]:
        """Delta and epsilon respect every defining relation."""
        A = self.alg
        images = dict(self._gen_cop)
        one_t = Tensor.pure(A.one, A.one)
        zero_t = Tensor(A, 2)
        counits = {x: self.counit(A.gen(x)) for x in images}
        rels = A.relations() + [("f f^-1 - 1", [(A.one_c, ("f", "F")), (-A.one_c, ())])]
        cop = run_check("coproduct respects relations", rels,
                        lambda rel: A.evaluate_relation(rel[1], images, one_t, zero_t) == 0,
                        describe=lambda rel: rel[0])
        cou = run_check("counit respects relations", rels,
                        lambda rel: A.evaluate_relation(rel[1], counits, A.one_c, A.zero_c) == 0,
                        describe=lambda rel: rel[0])
        return [cop, cou]

    def check_grouplike(self) -> List[CheckResult]:
        A = self.alg
        D = A.quantum_determinant()
        out = [
            CheckResult("Delta(delta) = delta (x) delta",
                        self.coproduct(A.delta) == Tensor.pure(A.delta, A.delta)),
            CheckResult("Delta(D) = D (x) D", self.coproduct(D) == Tensor.pure(D, D)),
            CheckResult("eps(D) = 1", self.counit(D) == 1),
        ]
        witnesses = [name for name, x in A.generators().items() if not D * x == x * D]
        out.append(CheckResult("D is not central", bool(witnesses), details={"witnesses": witnesses},
                               counterexample=None if witnesses else "D commutes with every generator"))
        return out


def _tensor_concat(parts: List[Tensor]) -> Tensor:
    """Outer tensor product of tensors, concatenating their legs."""
    alg = parts[0].alg
    terms: Dict[TensorKey, object] = {(): alg.one_c}
    for t in parts:
        new: Dict[TensorKey, object] = {}
        for k1, c1 in terms.items():
            for k2, c2 in t.terms.items():
                _acc(new, k1 + k2, c1 * c2)
        terms = new
    return Tensor(alg, sum(t.n for t in parts), terms)


def hopf_sample(alg: Algebra, rng: random.Random, n_random: int = 200,
                max_degree: int = 4) -> List[AlgebraElement]:
    """Generators, delta^-1, then seeded random monomials."""
    sample = list(alg.generators().values()) + [alg.delta_inv, alg.one]
    for _ in range(n_random):
        sample.append(alg.monomial(random_monomial(rng, max_degree)))
    return sample
