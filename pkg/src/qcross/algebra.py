"""The cross-product algebra GL_r(2) x| C[f, f^-1], localized at delta.

Normal monomials are tuples ``(k, i, j, l, m)`` standing for the ordered word
``f^k a^i b^j c^l d^m``.  A :class:`Poly` is a plain ``dict`` from normal
monomials to coefficients.  An :class:`AlgebraElement` is ``delta^-p * poly``;
delta = ad - r^-1 bc is central, so the localization is carried as an exponent
instead of a letter.

Two independent multiplication paths exist:

* :meth:`Algebra.straighten` runs the rewrite system on flat words, one
  adjacent swap at a time, with a selectable strategy.  It is slow and simple
  and serves as the oracle.
* :meth:`Algebra.mul` uses memoized right-multiplication of a normal monomial
  by a single letter.  Every other module goes through this path.
"""

from __future__ import annotations

import operator
import random
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

from .scalar import Params, Scalar, fmt

Monomial = Tuple[int, int, int, int, int]
Poly = Dict[Monomial, object]
Word = Tuple[str, ...]

UNIT: Monomial = (0, 0, 0, 0, 0)
LETTERS = ("f", "F", "a", "b", "c", "d")  # F is f^-1
_RANK = {"f": 0, "F": 0, "a": 1, "b": 2, "c": 3, "d": 4}
_GEN_SLOT = {"a": 1, "b": 2, "c": 3, "d": 4}


def mono_key(mon: Monomial):
    """Degree-lex key used for every serialized ordering."""
    return (abs(mon[0]) + sum(mon[1:]), mon)


def mono_str(mon: Monomial) -> str:
    parts = []
    for name, e in zip("fabcd", mon):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return " ".join(parts) if parts else "1"


def mono_word(mon: Monomial) -> Word:
    k, i, j, l, m = mon
    return ("f",) * k + ("F",) * (-k) + ("a",) * i + ("b",) * j + ("c",) * l + ("d",) * m


def word_mono(word: Sequence[str]) -> Monomial:
    """Monomial of a word that is already in normal order."""
    k = sum(1 for x in word if x == "f") - sum(1 for x in word if x == "F")
    return (k, word.count("a"), word.count("b"), word.count("c"), word.count("d"))


def poly_add_into(acc: Poly, other: Poly, coef=None):
    for mon, c in other.items():
        v = c if coef is None else c * coef
        if mon in acc:
            w = acc[mon] + v
            if w == 0:
                del acc[mon]
            else:
                acc[mon] = w
        elif v != 0:
            acc[mon] = v


def poly_is_zero(poly: Poly) -> bool:
    return all(c == 0 for c in poly.values())


class Algebra:
    """A_{r,s} for fixed parameter values, with multiplication caches."""

    def __init__(self, params: Params | None = None):
        self.params = params or Params.symbolic()
        P = self.params
        self.zero_c = P.zero
        self.one_c = P.one
        self._rpow: Dict[int, object] = {}
        self._spow: Dict[int, object] = {}
        self._insert_cache: Dict[Tuple[Monomial, str], Poly] = {}
        self._mm_cache: Dict[Tuple[Monomial, Monomial], Poly] = {}
        self._delta_pows: List[Poly] = [{UNIT: self.one_c}]
        # d a -> a d - (r^-1 - r) b c
        self.da_bc = -(self.rpow(-1) - self.rpow(1))
        self.delta_poly: Poly = {(0, 1, 0, 0, 1): self.one_c, (0, 0, 1, 1, 0): -self.rpow(-1)}
        self._delta_pows.append(self.delta_poly)
        self._rules = self._build_rules()

        self.one = self.element({UNIT: self.one_c})
        self.zero = self.element({})
        self.f = self.gen("f")
        self.finv = self.gen("F")
        self.a = self.gen("a")
        self.b = self.gen("b")
        self.c = self.gen("c")
        self.d = self.gen("d")
        self.delta = self.element(dict(self.delta_poly))
        self.delta_inv = AlgebraElement(self, 1, {UNIT: self.one_c})

    # -- scalars --------------------------------------------------------------
    def rpow(self, k: int):
        if k not in self._rpow:
            self._rpow[k] = self.params.r ** k
        return self._rpow[k]

    def spow(self, k: int):
        if k not in self._spow:
            self._spow[k] = self.params.s ** k
        return self._spow[k]

    def coerce(self, x):
        return self.params.coerce(x) if isinstance(x, int) else x

    # -- construction ---------------------------------------------------------
    def element(self, poly: Poly, p: int = 0) -> "AlgebraElement":
        return AlgebraElement(self, p, {m: c for m, c in poly.items() if c != 0})

    def monomial(self, mon: Monomial, coef=None, p: int = 0) -> "AlgebraElement":
        return AlgebraElement(self, p, {tuple(mon): self.one_c if coef is None else coef})

    def gen(self, letter: str) -> "AlgebraElement":
        return self.monomial(word_mono((letter,)))

    def generators(self) -> Dict[str, "AlgebraElement"]:
        return {"f": self.f, "f^-1": self.finv, "a": self.a, "b": self.b, "c": self.c, "d": self.d}

    def scalar(self, c) -> "AlgebraElement":
        return self.element({UNIT: self.coerce(c)})

    def word(self, word: Iterable[str]) -> "AlgebraElement":
        out = self.one
        for x in _expand_word(word):
            out = out * self.gen(x)
        return out

    # -- the rewrite system ---------------------------------------------------
    def _build_rules(self) -> Dict[Tuple[str, str], List[Tuple[object, Word]]]:
        r, rinv = self.rpow(1), self.rpow(-1)
        s, sinv = self.spow(1), self.spow(-1)
        one = self.one_c
        return {
            ("b", "a"): [(r, ("a", "b"))],
            ("c", "a"): [(r, ("a", "c"))],
            ("d", "b"): [(r, ("b", "d"))],
            ("d", "c"): [(r, ("c", "d"))],
            ("c", "b"): [(one, ("b", "c"))],
            ("d", "a"): [(one, ("a", "d")), (-(rinv - r), ("b", "c"))],
            ("a", "f"): [(one, ("f", "a"))],
            ("d", "f"): [(one, ("f", "d"))],
            ("b", "f"): [(sinv, ("f", "b"))],
            ("c", "f"): [(s, ("f", "c"))],
            ("a", "F"): [(one, ("F", "a"))],
            ("d", "F"): [(one, ("F", "d"))],
            ("b", "F"): [(s, ("F", "b"))],
            ("c", "F"): [(sinv, ("F", "c"))],
            ("f", "F"): [(one, ())],
            ("F", "f"): [(one, ())],
        }

    def redexes(self, word: Word) -> List[int]:
        return [i for i in range(len(word) - 1) if (word[i], word[i + 1]) in self._rules]

    def straighten(self, word, strategy: str = "leftmost", rng: random.Random | None = None) -> Poly:
        """Normal form of a word by repeated adjacent rewriting.

        ``word`` is a sequence of letters or ``(symbol, power)`` pairs; ``f`` may
        carry negative powers.  ``strategy`` picks the redex rewritten at each
        step: ``leftmost``, ``rightmost`` or ``random``.
        """
        return self.straighten_words({tuple(_expand_word(word)): self.one_c}, strategy, rng)

    def straighten_words(self, words: Dict[Word, object], strategy: str = "leftmost",
                         rng: random.Random | None = None) -> Poly:
        if strategy == "random" and rng is None:
            rng = random.Random(0)
        pending: Dict[Word, object] = dict(words)
        result: Poly = {}
        while pending:
            w, coef = pending.popitem()
            if coef == 0:
                continue
            reds = self.redexes(w)
            if not reds:
                poly_add_into(result, {word_mono(w): coef})
                continue
            if strategy == "leftmost":
                pos = reds[0]
            elif strategy == "rightmost":
                pos = reds[-1]
            elif strategy == "random":
                pos = rng.choice(reds)
            else:
                raise ValueError(f"unknown strategy {strategy!r}")
            for c, rep in self._rules[(w[pos], w[pos + 1])]:
                nw = w[:pos] + rep + w[pos + 2:]
                pending[nw] = pending[nw] + coef * c if nw in pending else coef * c
        return result

    # -- fast multiplication --------------------------------------------------
    def insert(self, mon: Monomial, x: str) -> Poly:
        """Normal form of ``mon * x`` for a single letter ``x``."""
        key = (mon, x)
        cached = self._insert_cache.get(key)
        if cached is not None:
            return cached
        k, i, j, l, m = mon
        if x == "f":
            out = {(k + 1, i, j, l, m): self.spow(l - j)}
        elif x == "F":
            out = {(k - 1, i, j, l, m): self.spow(j - l)}
        elif x == "d":
            out = {(k, i, j, l, m + 1): self.one_c}
        elif x == "c":
            out = {(k, i, j, l + 1, m): self.rpow(m)}
        elif x == "b":
            out = {(k, i, j + 1, l, m): self.rpow(m)}
        elif x == "a":
            if m == 0:
                out = {(k, i + 1, j, l, 0): self.rpow(j + l)}
            else:
                # (mon' d) a = mon' a d - (r^-1 - r) mon' b c
                prev = (k, i, j, l, m - 1)
                out = self.mul_poly_letter(self.insert(prev, "a"), "d")
                bc = self.mul_poly_letter(self.insert(prev, "b"), "c")
                poly_add_into(out, bc, self.da_bc)
        else:
            raise ValueError(f"unknown letter {x!r}")
        self._insert_cache[key] = out
        return out

    def mul_poly_letter(self, poly: Poly, x: str) -> Poly:
        out: Poly = {}
        for mon, c in poly.items():
            poly_add_into(out, self.insert(mon, x), c)
        return out

    def mul_mono(self, m1: Monomial, m2: Monomial) -> Poly:
        key = (m1, m2)
        cached = self._mm_cache.get(key)
        if cached is not None:
            return cached
        if m2 == UNIT:
            out = {m1: self.one_c}
        elif m1 == UNIT:
            out = {m2: self.one_c}
        else:
            out = {m1: self.one_c}
            for x in mono_word(m2):
                out = self.mul_poly_letter(out, x)
        self._mm_cache[key] = out
        return out

    def mul_poly(self, x: Poly, y: Poly) -> Poly:
        out: Poly = {}
        for m1, c1 in x.items():
            for m2, c2 in y.items():
                poly_add_into(out, self.mul_mono(m1, m2), c1 * c2)
        return out

    def delta_pow(self, n: int) -> Poly:
        while len(self._delta_pows) <= n:
            self._delta_pows.append(self.mul_poly(self._delta_pows[-1], self.delta_poly))
        return self._delta_pows[n]

    def raise_p(self, poly: Poly, n: int) -> Poly:
        """delta^n * poly, the numerator after re-expressing at n more inverse deltas."""
        if n == 0:
            return poly
        return self.mul_poly(self.delta_pow(n), poly)

    # -- element-level operations --------------------------------------------
    def mul(self, x: "AlgebraElement", y: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self, x.p + y.p, self.mul_poly(x.poly, y.poly))

    def add(self, x: "AlgebraElement", y: "AlgebraElement") -> "AlgebraElement":
        p = max(x.p, y.p)
        out = dict(self.raise_p(x.poly, p - x.p))
        poly_add_into(out, self.raise_p(y.poly, p - y.p))
        return AlgebraElement(self, p, out)

    def eq(self, x: "AlgebraElement", y: "AlgebraElement") -> bool:
        p = max(x.p, y.p)
        diff = dict(self.raise_p(x.poly, p - x.p))
        poly_add_into(diff, self.raise_p(y.poly, p - y.p), -self.one_c)
        return poly_is_zero(diff)

    def quantum_determinant(self) -> "AlgebraElement":
        return self.delta * self.f

    def act_f(self, x: "AlgebraElement", power: int = 1) -> "AlgebraElement":
        """Action of f^power: b -> s b, c -> s^-1 c, extended as an algebra map."""
        return AlgebraElement(
            self, x.p, {mon: c * self.spow(power * (mon[2] - mon[3])) for mon, c in x.poly.items()}
        )

    def check_smash_consistency(self) -> Dict[str, bool]:
        """For each of a, b, c, d check f x == (f |> x) f."""
        return {name: self.f * x == self.act_f(x) * self.f
                for name, x in (("a", self.a), ("b", self.b), ("c", self.c), ("d", self.d))}

    def divide_delta(self, poly: Poly):
        """Exact quotient poly / delta, or None if delta does not divide poly."""
        rem = dict(poly)
        quot: Poly = {}
        while rem:
            lead = max(rem, key=lambda mn: (mn[1] + mn[4], mono_key(mn)))
            k, i, j, l, m = lead
            if i == 0 or m == 0:
                return None
            q = (k, i - 1, j, l, m - 1)
            prod = self.mul_mono(q, (0, 1, 0, 0, 1))
            prod = dict(prod)
            poly_add_into(prod, self.mul_mono(q, (0, 0, 1, 1, 0)), -self.rpow(-1))
            factor = rem[lead] / prod[lead]
            poly_add_into(quot, {q: factor})
            poly_add_into(rem, prod, -factor)
        return quot

    def reduce_delta(self, x: "AlgebraElement") -> "AlgebraElement":
        """Cancel inverse deltas against exact delta factors of the numerator."""
        p, poly = x.p, x.poly
        while p > 0 and poly:
            q = self.divide_delta(poly)
            if q is None:
                break
            p, poly = p - 1, q
        if not poly:
            p = 0
        return AlgebraElement(self, p, poly)

    # -- relations -----------------------------------------------------------
    def relations(self) -> List[Tuple[str, List[Tuple[object, Word]]]]:
        """The defining quadratic relations of A_{r,s}, as linear combinations of words."""
        one, rinv, s, sinv = self.one_c, self.rpow(-1), self.spow(1), self.spow(-1)
        r = self.rpow(1)
        return [
            ("ab - r^-1 ba", [(one, ("a", "b")), (-rinv, ("b", "a"))]),
            ("bd - r^-1 db", [(one, ("b", "d")), (-rinv, ("d", "b"))]),
            ("ac - r^-1 ca", [(one, ("a", "c")), (-rinv, ("c", "a"))]),
            ("cd - r^-1 dc", [(one, ("c", "d")), (-rinv, ("d", "c"))]),
            ("bc - cb", [(one, ("b", "c")), (-one, ("c", "b"))]),
            ("ad - da - (r^-1 - r) bc",
             [(one, ("a", "d")), (-one, ("d", "a")), (-(rinv - r), ("b", "c"))]),
            ("af - fa", [(one, ("a", "f")), (-one, ("f", "a"))]),
            ("cf - s fc", [(one, ("c", "f")), (-s, ("f", "c"))]),
            ("bf - s^-1 fb", [(one, ("b", "f")), (-sinv, ("f", "b"))]),
            ("df - fd", [(one, ("d", "f")), (-one, ("f", "d"))]),
        ]

    def evaluate_relation(self, terms, images: Dict[str, object], one, zero, mul=operator.mul):
        """Apply a multiplicative map given on letters to a word combination.

        Pass ``mul=operator.matmul`` when the images are numpy matrices.
        """
        total = zero
        for coef, word in terms:
            prod = one
            for x in word:
                prod = mul(prod, images[x])
            total = total + prod * coef
        return total


def _expand_word(word) -> List[str]:
    out: List[str] = []
    for item in word:
        if isinstance(item, str):
            sym, power = item, 1
        else:
            sym, power = item
        if sym in ("f^-1", "F"):
            sym, power = "f", -power
        if sym == "f":
            out.extend(["f" if power > 0 else "F"] * abs(power))
        elif sym in _GEN_SLOT:
            if power < 0:
                raise ValueError(f"negative power of {sym} is not an algebra word")
            out.extend([sym] * power)
        else:
            raise ValueError(f"unknown generator {sym!r}")
    return out


class AlgebraElement:
    """``delta^-p * poly``; immutable by convention."""

    __slots__ = ("alg", "p", "poly")

    def __init__(self, alg: Algebra, p: int, poly: Poly):
        self.alg = alg
        self.p = p
        self.poly = poly

    def is_zero(self) -> bool:
        return poly_is_zero(self.poly)

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.alg.scalar(other)
        return self.alg.add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.alg, self.p, {m: -c for m, c in self.poly.items()})

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.alg.scalar(other)
        return self.alg.add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "AlgebraElement":
        if c == 0:
            return AlgebraElement(self.alg, 0, {})
        return AlgebraElement(self.alg, self.p, {m: v * c for m, v in self.poly.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.alg.mul(self, other)
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are only available for f and delta")
        out = self.alg.one
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            if other == 0:
                return self.is_zero()
            other = self.alg.scalar(other)
        return self.alg.eq(self, other)

    __hash__ = None

    def terms(self):
        return sorted(self.poly.items(), key=lambda t: mono_key(t[0]), reverse=True)

    def specialize(self, alg: Algebra) -> "AlgebraElement":
        """Carry a symbolic element into an algebra over other parameter values."""
        return AlgebraElement(alg, self.p, {m: alg.params.lower(c) for m, c in self.poly.items()
                                            if alg.params.lower(c) != 0})

    def __str__(self):
        if not self.poly:
            return "0"
        body = " + ".join(f"{mono_str(m)} : {fmt(c)}" for m, c in self.terms())
        if self.p:
            return f"δ^-{self.p} * ( {body} )"
        return f"( {body} )"

    __repr__ = __str__


# -- random samples ----------------------------------------------------------

def random_monomial(rng: random.Random, max_degree: int, allow_finv: bool = True) -> Monomial:
    """Uniform-ish normal monomial with total degree (counting |k|) at most max_degree."""
    deg = rng.randint(0, max_degree)
    slots = [0, 0, 0, 0, 0]
    sign = rng.choice((1, -1)) if allow_finv else 1
    for _ in range(deg):
        slots[rng.randrange(5)] += 1
    slots[0] *= sign
    return tuple(slots)


def random_word(rng: random.Random, max_length: int) -> Word:
    n = rng.randint(0, max_length)
    return tuple(rng.choice(LETTERS) for _ in range(n))


def random_element(alg: Algebra, rng: random.Random, max_degree: int = 3, max_terms: int = 3,
                   max_p: int = 0) -> AlgebraElement:
    poly: Poly = {}
    for _ in range(rng.randint(1, max_terms)):
        mon = random_monomial(rng, max_degree)
        coef = alg.rpow(rng.randint(-2, 2)) * alg.spow(rng.randint(-1, 1)) * rng.choice((1, -1, 2))
        poly_add_into(poly, {mon: coef})
    return AlgebraElement(alg, rng.randint(0, max_p), poly)
