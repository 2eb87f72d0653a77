"""Simple algebraic number fields Q(theta) given by one monic minimal polynomial.

Elements of a degree-1 field are plain :class:`fractions.Fraction` values, so the
rational case costs nothing extra.  Elements of a proper extension are
:class:`NFElem` instances holding the coefficient vector of the canonical
representative of degree < deg(minpoly).
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

Rational = (int, Fraction)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {type(x).__name__}")


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _upoly_divmod(a: list, b: list) -> tuple[list, list]:
    """Divide dense univariate rational polynomials (low degree first)."""
    a = list(a)
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        f = a[-1] / lb
        q[shift] = f
        for i, bc in enumerate(b):
            a[shift + i] -= f * bc
        a.pop()
    return _trim(q), _trim(a)


def _upoly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _upoly_sub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim([_frac(x) for x in out])


def _is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


class NumberField:
    """Q(name) with name a root of the monic polynomial ``minpoly``.

    ``minpoly`` is given low degree first, e.g. ``[1, 1, 1]`` for x^2+x+1.
    """

    __slots__ = ("name", "minpoly", "degree", "_key")

    def __init__(self, name: str, minpoly: Iterable):
        coeffs = _trim([_frac(c) for c in minpoly])
        if len(coeffs) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        self.name = name
        self.minpoly = tuple(coeffs)
        self.degree = len(coeffs) - 1
        self._key = (name, self.minpoly)
        if self.degree >= 2:
            self._check_irreducible()

    def _check_irreducible(self) -> None:
        # Rational-root test covers every degree; degree 2 is then complete.
        m = self.minpoly
        den = 1
        for c in m:
            den = den * c.denominator // _gcd(den, c.denominator)
        ints = [int(c * den) for c in m]
        lead, const = ints[-1], ints[0]
        if const == 0:
            raise ValueError("minimal polynomial has root 0")
        for p in _divisors(abs(const)):
            for q in _divisors(abs(lead)):
                for s in (1, -1):
                    r = Fraction(s * p, q)
                    if sum(c * r**i for i, c in enumerate(m)) == 0:
                        raise ValueError(f"minimal polynomial has rational root {r}")
        if self.degree == 2:
            b, c = m[1], m[0]
            if _is_rational_square(b * b - 4 * c):
                raise ValueError("quadratic minimal polynomial is reducible")

    # -- identity -------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, NumberField) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.degree == 1:
            return "QQ"
        return f"NumberField({self.name!r}, {list(map(str, self.minpoly))})"

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    # -- element construction ----------------------------------------------
    def __call__(self, x):
        """Coerce ``x`` (int, Fraction, NFElem of this field) into the field."""
        if self.degree == 1:
            if isinstance(x, NFElem):
                raise TypeError("cannot coerce extension element into QQ")
            return _frac(x)
        if isinstance(x, NFElem):
            if x.field != self:
                raise TypeError("number field mismatch")
            return x
        return NFElem(self, (_frac(x),) + (Fraction(0),) * (self.degree - 1))

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def gen(self):
        if self.degree == 1:
            # the root of x - c is the rational c
            return -self.minpoly[0]
        c = [Fraction(0)] * self.degree
        c[1] = Fraction(1)
        return NFElem(self, tuple(c))

    def from_coeffs(self, coeffs: Sequence):
        """Element sum coeffs[i] * gen^i, reduced modulo the minimal polynomial."""
        return nf_reduce(self, coeffs)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [0]
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i * i != n:
                out.append(n // i)
        i += 1
    return out


def nf_reduce(field: NumberField, coeffs: Sequence):
    """Canonical representative of a polynomial expression in the generator."""
    c = [_frac(x) for x in coeffs]
    if field.degree == 1:
        g = -field.minpoly[0]
        return sum((x * g**i for i, x in enumerate(c)), Fraction(0))
    _, r = _upoly_divmod(c, list(field.minpoly))
    r = r + [Fraction(0)] * (field.degree - len(r))
    return NFElem(field, tuple(r))


class NFElem:
    """Element of a proper extension field; immutable."""

    __slots__ = ("field", "c", "_hash")

    def __init__(self, field: NumberField, c: tuple):
        self.field = field
        self.c = c
        self._hash = None

    def _coerce(self, other):
        if isinstance(other, NFElem):
            if other.field != self.field:
                raise TypeError("number field mismatch")
            return other
        if isinstance(other, Rational):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return NFElem(self.field, tuple(x + y for x, y in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.field, tuple(-x for x in self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return NFElem(self.field, tuple(x - y for x, y in zip(self.c, o.c)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, Rational):
            return NFElem(self.field, tuple(x * other for x in self.c))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return nf_reduce(self.field, _upoly_mul(self.c, o.c))

    __rmul__ = __mul__

    def inverse(self) -> "NFElem":
        if not self:
            raise ZeroDivisionError("inverse of zero in number field")
        # extended Euclid on (self, minpoly) over Q[x]
        r0, r1 = list(self.field.minpoly), _trim(list(self.c))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _upoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _upoly_sub(s0, _upoly_mul(q, s1))
        if not r1:
            raise ZeroDivisionError("element is a zero divisor; minimal polynomial reducible")
        inv = [x / r1[0] for x in s1]
        return nf_reduce(self.field, inv)

    def __truediv__(self, other):
        if isinstance(other, Rational):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return NFElem(self.field, tuple(x / other for x in self.c))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, NFElem):
            return self.field == other.field and self.c == other.c
        if isinstance(other, Rational):
            return self.c[0] == other and not any(self.c[1:])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not any(self.c[1:]):
                self._hash = hash(self.c[0])
            else:
                self._hash = hash(self.c)
        return self._hash

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def __repr__(self):
        return f"NFElem({self})"

    def __str__(self):
        return format_scalar(self)


def format_scalar(x) -> str:
    """Deterministic text for a field element."""
    if isinstance(x, NFElem):
        name = x.field.name
        parts = []
        for i in range(len(x.c) - 1, -1, -1):
            c = x.c[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (name if i == 1 else f"{name}^{i}")
            if mono == "":
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out if len(parts) == 1 else f"({out})"
    return str(x)


QQ = NumberField("q", [0, 1])


def named_field(name: str) -> NumberField:
    """Built-in fields used by the scenario configs."""
    table = {
        "QQ": ("q", [0, 1]),
        "Q(omega)": ("omega", [1, 1, 1]),
        "Q(sqrt3)": ("sqrt3", [-3, 0, 1]),
        "Q(i)": ("i", [1, 0, 1]),
        "Q(phi)": ("z", [-1, -1, 1]),
        "Q(sqrt-15)": ("x", [10, -5, 1]),
        # 12th roots of unity: contains omega, i and sqrt3 at once
        "Q(zeta12)": ("zeta", [1, 0, -1, 0, 1]),
        # Q(i, sqrt5) generated by i + sqrt5
        "Q(i,sqrt5)": ("s", [36, 0, -8, 0, 1]),
    }
    if name not in table:
        raise KeyError(f"unknown field {name!r}")
    n, m = table[name]
    return QQ if n == "q" else NumberField(n, m)
