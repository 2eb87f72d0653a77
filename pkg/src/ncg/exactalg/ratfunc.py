"""Reduced rational functions over a PolyRing."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .mpoly import MPoly, PolyRing, poly_gcd
from .numberfield import NFElem

_SCALARS = (int, Fraction, NFElem)


def rf_normalize(num: MPoly, den: MPoly) -> "RatFunc":
    """Cancel the gcd and make the denominator's leading coefficient 1."""
    if not den.terms:
        raise ZeroDivisionError("rational function with zero denominator")
    if num.ring != den.ring:
        raise TypeError("numerator and denominator live in different rings")
    ring = num.ring
    if not num.terms:
        return RatFunc(ring, ring.zero(), ring.one(), _trusted=True)
    if den.is_constant():
        inv = 1 / den.constant_value()
        return RatFunc(ring, num * inv, ring.one(), _trusted=True)
    g = poly_gcd(num, den)
    if not g.is_constant():
        num = num.divexact(g)
        den = den.divexact(g)
    lc = den.leading_coeff()
    if lc != 1:
        inv = 1 / lc
        num = num * inv
        den = den * inv
    return RatFunc(ring, num, den, _trusted=True)


class RatFunc:
    """Element of the fraction field of a PolyRing, kept in canonical form."""

    __slots__ = ("ring", "num", "den", "_hash")

    def __init__(self, ring: PolyRing, num: MPoly, den: MPoly | None = None, _trusted=False):
        if _trusted:
            self.ring, self.num, self.den = ring, num, den
        else:
            r = rf_normalize(num, den if den is not None else ring.one())
            self.ring, self.num, self.den = r.ring, r.num, r.den
        self._hash = None

    # -- construction helpers --------------------------------------------------
    @staticmethod
    def from_poly(p: MPoly) -> "RatFunc":
        return RatFunc(p.ring, p, p.ring.one(), _trusted=True)

    @staticmethod
    def const(ring: PolyRing, c) -> "RatFunc":
        return RatFunc(ring, ring.const(c), ring.one(), _trusted=True)

    @staticmethod
    def var(ring: PolyRing, name: str) -> "RatFunc":
        return RatFunc(ring, ring.var(name), ring.one(), _trusted=True)

    def _lift(self, other):
        if isinstance(other, RatFunc):
            if other.ring != self.ring:
                raise TypeError("rational function ring mismatch")
            return other
        if isinstance(other, _SCALARS):
            return RatFunc.const(self.ring, other)
        if isinstance(other, MPoly):
            if other.ring != self.ring:
                raise TypeError("rational function ring mismatch")
            return RatFunc.from_poly(other)
        return NotImplemented

    # -- arithmetic ----------------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not o.num.terms:
            return self
        if not self.num.terms:
            return o
        d1, d2 = self.den, o.den
        if d1 == d2:
            if d1.is_constant():
                return RatFunc(self.ring, self.num + o.num, d1, _trusted=True)
            return rf_normalize(self.num + o.num, d1)
        if d1.is_constant():
            return RatFunc(self.ring, self.num * d2 + o.num, d2, _trusted=True)
        if d2.is_constant():
            return RatFunc(self.ring, self.num + o.num * d1, d1, _trusted=True)
        g = poly_gcd(d1, d2)
        if g.is_constant():
            num = self.num * d2 + o.num * d1
            den = d1 * d2
            # coprime denominators: the sum is already reduced
            lc = den.leading_coeff()
            if lc != 1:
                num, den = num * (1 / lc), den * (1 / lc)
            return RatFunc(self.ring, num, den, _trusted=True)
        d1g, d2g = d1.divexact(g), d2.divexact(g)
        num = self.num * d2g + o.num * d1g
        den = d1g * d2
        return rf_normalize(num, den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.ring, -self.num, self.den, _trusted=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            if not other:
                return RatFunc.const(self.ring, 0)
            return RatFunc(self.ring, self.num * other, self.den, _trusted=True)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not self.num.terms or not o.num.terms:
            return RatFunc.const(self.ring, 0)
        if self.den.is_constant() and o.den.is_constant():
            return RatFunc(self.ring, self.num * o.num, self.den, _trusted=True)
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        g1 = poly_gcd(n1, d2)
        if not g1.is_constant():
            n1, d2 = n1.divexact(g1), d2.divexact(g1)
        g2 = poly_gcd(n2, d1)
        if not g2.is_constant():
            n2, d1 = n2.divexact(g2), d1.divexact(g2)
        num, den = n1 * n2, d1 * d2
        lc = den.leading_coeff()
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        return RatFunc(self.ring, num, den, _trusted=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num.terms:
            raise ZeroDivisionError("inverse of zero rational function")
        return rf_normalize(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            if not other:
                raise ZeroDivisionError("division by zero")
            return RatFunc(self.ring, self.num * (1 / self.ring.field(other)), self.den, _trusted=True)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.ring, self.num**n, self.den**n, _trusted=True)

    # -- predicates ----------------------------------------------------------------
    def __bool__(self):
        return bool(self.num.terms)

    def is_zero(self) -> bool:
        return not self.num.terms

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        return self.num.constant_value()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.ring == other.ring and self.num == other.num and self.den == other.den
        if isinstance(other, _SCALARS):
            return self.den.is_constant() and self.num == other
        if isinstance(other, MPoly):
            return self.den.is_constant() and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- evaluation ------------------------------------------------------------------
    def substitute(self, values: Mapping[str, "RatFunc"], target: PolyRing) -> "RatFunc":
        """Replace named variables by RatFuncs of ``target``; others must exist there."""
        vals = {}
        for i, n in enumerate(self.ring.names):
            if n in values:
                v = values[n]
                if not isinstance(v, RatFunc):
                    v = RatFunc.const(target, v)
                vals[i] = v
            else:
                vals[i] = RatFunc.var(target, n)
        one = RatFunc.const(target, 1)
        num = self.num.substitute(vals, one=one) if self.num.terms else RatFunc.const(target, 0)
        den = self.den.substitute(vals, one=one)
        if not isinstance(num, RatFunc):
            num = one * num
        if not isinstance(den, RatFunc):
            den = one * den
        if den.is_zero():
            raise ZeroDivisionError("denominator vanishes under substitution")
        return num / den

    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        n = str(self.num)
        if len(self.num.terms) > 1:
            n = f"({n})"
        d = str(self.den)
        if len(self.den.terms) > 1 or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFunc({self})"
