"""Exact rational functions in the two deformation parameters r and s.

A :class:`LaurentPoly` is a finite map ``(e_r, e_s) -> int``; exponents may be
negative, so ``r**-1`` is a polynomial.  A :class:`Scalar` is a fraction of two
Laurent polynomials, reduced only by integer content and by monomial units.
Equality is decided by cross-multiplication, so no multivariate gcd is needed.

Every module in the package also accepts :class:`fractions.Fraction` values in
place of scalars; :class:`Params` bundles the parameter values for either mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Dict, Iterable, Tuple, Union

Exp = Tuple[int, int]


class SpecializationError(ArithmeticError):
    """A denominator vanished at the requested specialization point."""


def _deglex_key(e: Exp):
    return (e[0] + e[1], e[0])


class LaurentPoly:
    """Laurent polynomial in r, s with integer coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Dict[Exp, int] | None = None):
        self.terms: Dict[Exp, int] = {e: c for e, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, er: int, es: int, c: int = 1) -> "LaurentPoly":
        return cls({(er, es): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if len(other.terms) == 1:
            ((e2, c2),) = other.terms.items()
            return LaurentPoly(
                {(e[0] + e2[0], e[1] + e2[1]): c * c2 for e, c in self.terms.items()}
            )
        out: Dict[Exp, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = (e1[0] + e2[0], e1[1] + e2[1])
                out[key] = out.get(key, 0) + c1 * c2
        return LaurentPoly(out)

    def shift(self, dr: int, ds: int) -> "LaurentPoly":
        return LaurentPoly({(e[0] + dr, e[1] + ds): c for e, c in self.terms.items()})

    def scale_div(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e: c // k for e, c in self.terms.items()})

    def content(self) -> int:
        return reduce(gcd, self.terms.values(), 0)

    def min_exponents(self) -> Exp:
        return (min(e[0] for e in self.terms), min(e[1] for e in self.terms))

    def leading(self) -> Tuple[Exp, int]:
        e = max(self.terms, key=_deglex_key)
        return e, self.terms[e]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _deglex_key(t[0]), reverse=True)

    def evaluate(self, r0: Fraction, s0: Fraction) -> Fraction:
        total = Fraction(0)
        for (er, es), c in self.terms.items():
            total += c * Fraction(r0) ** er * Fraction(s0) ** es
        return total

    def involves_s(self) -> bool:
        return any(e[1] != 0 for e in self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (er, es), c in self.sorted_terms():
            factors = []
            for name, k in (("r", er), ("s", es)):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            mono = " ".join(factors)
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag} {mono}"
            else:
                body = str(mag)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    __repr__ = __str__


_ONE = LaurentPoly.const(1)


class Scalar:
    """Element of Q(r, s), stored as ``num / den`` with Laurent numerator and denominator.

    Canonical reduction shifts the denominator so that its minimal r- and
    s-exponents are zero, divides out the common integer content, and makes the
    leading coefficient of the denominator (degree-lex) positive.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Union[LaurentPoly, int, Fraction] = 0, den: LaurentPoly | int = 1):
        if isinstance(num, Fraction):
            num, den = LaurentPoly.const(num.numerator), LaurentPoly.const(num.denominator) * _lp(den)
        num, den = _lp(num), _lp(den)
        if den.is_zero():
            raise ZeroDivisionError("scalar with zero denominator")
        if num.is_zero():
            self.num, self.den = num, _ONE
            return
        mr, ms = den.min_exponents()
        if mr or ms:
            den = den.shift(-mr, -ms)
            num = num.shift(-mr, -ms)
        g = gcd(num.content(), den.content())
        if den.leading()[1] < 0:
            g = -g
        if g != 1:
            num, den = num.scale_div(g), den.scale_div(g)
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "Scalar":
        obj = object.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    # -- construction helpers -------------------------------------------------
    @classmethod
    def r(cls, k: int = 1) -> "Scalar":
        return cls._raw(LaurentPoly.monomial(k, 0), _ONE)

    @classmethod
    def s(cls, k: int = 1) -> "Scalar":
        return cls._raw(LaurentPoly.monomial(0, k), _ONE)

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    # -- predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == _ONE

    def involves_s(self) -> bool:
        return self.num.involves_s() or self.den.involves_s()

    def as_monomial(self):
        """Return ``(coeff, e_r, e_s)`` if this scalar is ``coeff * r^e_r s^e_s``, else None."""
        if len(self.den.terms) != 1 or len(self.num.terms) != 1:
            return None
        ((dn, dc),) = self.den.terms.items()
        ((nn, nc),) = self.num.terms.items()
        return Fraction(nc, dc), nn[0] - dn[0], nn[1] - dn[1]

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar(other)
            else:
                return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            if self.den == _ONE:
                return Scalar._raw(self.num + other.num, _ONE)
            return Scalar(self.num + other.num, self.den)
        return Scalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar(other)
            else:
                return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den == _ONE and other.den == _ONE:
            return Scalar._raw(self.num * other.num, _ONE)
        return Scalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        if len(self.num.terms) == 1 and self.den == _ONE:
            ((e, c),) = self.num.terms.items()
            if c in (1, -1):
                return Scalar._raw(LaurentPoly({(-e[0], -e[1]): c}), _ONE)
        return Scalar(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar(other)
            else:
                return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        # equal values must hash equal even when their reduced forms differ
        try:
            return hash(specialize(self, _HASH_R, _HASH_S))
        except SpecializationError:
            return 0

    # -- evaluation -----------------------------------------------------------
    def specialize(self, r0, s0) -> Fraction:
        return specialize(self, r0, s0)

    def __str__(self):
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"Scalar{self}"


def _lp(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    raise TypeError(f"expected LaurentPoly or int, got {type(x).__name__}")


_HASH_R, _HASH_S = Fraction(7, 3), Fraction(11, 5)

ZERO = Scalar._raw(LaurentPoly(), _ONE)
ONE = Scalar._raw(_ONE, _ONE)

#: the symbolic deformation parameters
r = Scalar.r()
s = Scalar.s()
#: r - r^{-1}
lam = r - r.inv()


def specialize(x, r0, s0) -> Fraction:
    """Evaluate a scalar exactly at the rational point ``(r0, s0)``."""
    r0, s0 = Fraction(r0), Fraction(s0)
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if r0 == 0 or s0 == 0:
        raise SpecializationError("deformation parameters must be nonzero")
    den = x.den.evaluate(r0, s0)
    if den == 0:
        raise SpecializationError(f"denominator of {x} vanishes at r={r0}, s={s0}")
    return x.num.evaluate(r0, s0) / den


def fmt(x) -> str:
    """Canonical text for a coefficient of either mode."""
    if isinstance(x, Scalar):
        return str(x)
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    return str(x)


def is_zero(x) -> bool:
    return x == 0


@dataclass(frozen=True)
class Params:
    """Values of the deformation parameters, symbolic (Scalar) or numeric (Fraction)."""

    r: object
    s: object

    @classmethod
    def symbolic(cls) -> "Params":
        return cls(r, s)

    @classmethod
    def specialized(cls, r0, s0) -> "Params":
        r0, s0 = Fraction(r0), Fraction(s0)
        if r0 == 0 or s0 == 0:
            raise SpecializationError("deformation parameters must be nonzero")
        return cls(r0, s0)

    @property
    def is_symbolic(self) -> bool:
        return isinstance(self.r, Scalar)

    @property
    def zero(self):
        return ZERO if self.is_symbolic else Fraction(0)

    @property
    def one(self):
        return ONE if self.is_symbolic else Fraction(1)

    def coerce(self, x):
        if self.is_symbolic:
            return Scalar.coerce(x)
        if isinstance(x, Scalar):
            raise TypeError("symbolic scalar in specialized mode")
        return Fraction(x)

    def rpow(self, k: int):
        return self.r ** k

    def spow(self, k: int):
        return self.s ** k

    @property
    def lam(self):
        return self.r - self.one / self.r

    def lower(self, x):
        """Map a symbolic scalar into this parameter domain."""
        if self.is_symbolic:
            return Scalar.coerce(x)
        if isinstance(x, Scalar):
            return specialize(x, self.r, self.s)
        return Fraction(x)


def sum_scalars(values: Iterable, zero):
    total = zero
    for v in values:
        total = total + v
    return total
