"""Sparse multivariate polynomials over a NumberField.

Terms are stored as a dict from exponent tuples to nonzero field elements.  The
monomial order is graded lexicographic on the ring's declared variable order,
so ``x0 > x1 > ...`` and higher total degree wins.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .numberfield import QQ, NFElem, NumberField, format_scalar
from . import kernels


class PolyRing:
    """Context: ordered variable names plus the coefficient field."""

    __slots__ = ("names", "field", "nvars", "_zero_exp", "_key", "_index")

    def __init__(self, names: Iterable[str] = (), field: NumberField = QQ):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        if field.degree > 1 and field.name in self.names:
            raise ValueError("field generator name clashes with a variable")
        self.field = field
        self.nvars = len(self.names)
        self._zero_exp = (0,) * self.nvars
        self._key = (self.names, field)
        self._index = {n: i for i, n in enumerate(self.names)}

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"PolyRing({list(self.names)}, {self.field!r})"

    def index(self, name: str) -> int:
        return self._index[name]

    def zero(self) -> "MPoly":
        return MPoly(self, {})

    def one(self) -> "MPoly":
        return MPoly(self, {self._zero_exp: self.field.one()})

    def const(self, c) -> "MPoly":
        c = self.field(c)
        return MPoly(self, {self._zero_exp: c} if c else {})

    def var(self, name: str) -> "MPoly":
        e = [0] * self.nvars
        e[self._index[name]] = 1
        return MPoly(self, {tuple(e): self.field.one()})

    def gens(self) -> tuple["MPoly", ...]:
        return tuple(self.var(n) for n in self.names)

    def monomial(self, exp: tuple, coeff=1) -> "MPoly":
        c = self.field(coeff)
        return MPoly(self, {tuple(exp): c} if c else {})


def _grlex_key(e: tuple):
    return (sum(e), e)


class MPoly:
    """Immutable polynomial; use ring helpers to construct."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- coercion -----------------------------------------------------------
    def _lift(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.ring != self.ring:
                raise TypeError("polynomial ring mismatch")
            return other
        if isinstance(other, (int, Fraction, NFElem)):
            return self.ring.const(other)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not o.terms:
            return self
        if not self.terms:
            return o
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.ring, {e: -c for e, c in self.terms.items()})

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
        if isinstance(other, (int, Fraction, NFElem)):
            c = self.ring.field(other)
            if not c:
                return self.ring.zero()
            return MPoly(self.ring, {e: v * c for e, v in self.terms.items()})
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not self.terms or not o.terms:
            return self.ring.zero()
        return MPoly(self.ring, kernels.poly_mul(self.terms, o.terms))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- structure ----------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring._zero_exp in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms.get(self.ring._zero_exp, self.ring.field.zero())

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, NFElem)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def leading_exp(self) -> tuple:
        return max(self.terms, key=_grlex_key)

    def leading_coeff(self):
        if not self.terms:
            return self.ring.field.zero()
        return self.terms[self.leading_exp()]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def min_degree_in(self, i: int) -> int:
        return min((e[i] for e in self.terms), default=0)

    def variables(self) -> set[int]:
        out = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    out.add(i)
        return out

    def monic(self) -> "MPoly":
        lc = self.leading_coeff()
        if not self.terms or lc == 1:
            return self
        inv = 1 / lc
        return MPoly(self.ring, {e: c * inv for e, c in self.terms.items()})

    def scale(self, c) -> "MPoly":
        return self * c

    # -- univariate views -----------------------------------------------------
    def coeffs_in(self, i: int) -> dict[int, "MPoly"]:
        """Coefficients as a polynomial in variable i (coefficients free of it)."""
        groups: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            e2 = e[:i] + (0,) + e[i + 1:]
            groups.setdefault(k, {})[e2] = c
        return {k: MPoly(self.ring, t) for k, t in groups.items()}

    def shift(self, i: int, k: int) -> "MPoly":
        """Multiply by x_i^k."""
        if k == 0:
            return self
        return MPoly(self.ring, {e[:i] + (e[i] + k,) + e[i + 1:]: c for e, c in self.terms.items()})

    # -- division -------------------------------------------------------------
    def divexact(self, other: "MPoly") -> "MPoly":
        """Exact quotient; raises ArithmeticError if other does not divide self."""
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def divmod(self, other: "MPoly") -> tuple["MPoly", "MPoly"]:
        if not other.terms:
            raise ZeroDivisionError("polynomial division by zero")
        if other.is_constant():
            inv = 1 / other.constant_value()
            return self * inv, self.ring.zero()
        le = other.leading_exp()
        inv = 1 / other.terms[le]
        rem = dict(self.terms)
        quo: dict = {}
        out_rem: dict = {}
        oterms = list(other.terms.items())
        while rem:
            e = max(rem, key=_grlex_key)
            c = rem[e]
            if all(a >= b for a, b in zip(e, le)):
                qe = tuple(a - b for a, b in zip(e, le))
                qc = c * inv
                quo[qe] = qc
                for oe, oc in oterms:
                    te = tuple(a + b for a, b in zip(qe, oe))
                    v = rem.get(te)
                    v = -qc * oc if v is None else v - qc * oc
                    if v:
                        rem[te] = v
                    else:
                        rem.pop(te, None)
            else:
                out_rem[e] = c
                del rem[e]
        return MPoly(self.ring, quo), MPoly(self.ring, out_rem)

    # -- evaluation -------------------------------------------------------------
    def substitute(self, values: Mapping[int, object], one=None):
        """Evaluate with values[i] replacing variable i (missing ones kept).

        Values may be any ring-like objects supporting + and *; variables absent
        from ``values`` are kept as monomials of this ring, which requires the
        values to live in this ring too.
        """
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = values[i] if k == 1 else power(i, k - 1) * values[i]
            return cache[key]

        total = None
        for e, c in self.terms.items():
            term = None
            rest = [0] * self.ring.nvars
            keep = False
            for i, k in enumerate(e):
                if not k:
                    continue
                if i in values:
                    p = power(i, k)
                    term = p if term is None else term * p
                else:
                    rest[i] = k
                    keep = True
            if keep:
                m = self.ring.monomial(tuple(rest), 1)
                term = m if term is None else term * m
            if term is None:
                term = c if one is None else one * c
            else:
                term = term * c
            total = term if total is None else total + term
        if total is None:
            return self.ring.zero() if one is None else one * 0
        return total

    def __call__(self, *args):
        return self.substitute(dict(enumerate(args)))

    # -- rendering --------------------------------------------------------------
    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(self.ring.names, e) if k
            )
            cs = format_scalar(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"MPoly({self})"


# ---------------------------------------------------------------------------
# gcd
# ---------------------------------------------------------------------------

def _monomial_gcd(m: MPoly, p: MPoly) -> MPoly:
    (e,) = m.terms
    mins = list(e)
    for f in p.terms:
        mins = [min(a, b) for a, b in zip(mins, f)]
    return m.ring.monomial(tuple(mins), 1)


def _content_in(p: MPoly, i: int) -> MPoly:
    g = None
    for c in p.coeffs_in(i).values():
        g = c.monic() if g is None else poly_gcd(g, c)
        if g.is_constant():
            return g.ring.one()
    return g


def _prem(a: dict[int, MPoly], b: dict[int, MPoly]) -> dict[int, MPoly]:
    """Pseudo-remainder of univariate views (degree -> coefficient)."""
    db = max(b)
    lcb = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lcr = r[dr]
        new = {k: v * lcb for k, v in r.items() if k != dr}
        for k, v in b.items():
            if k == db:
                continue
            kk = k + dr - db
            t = new.get(kk)
            t = -(lcr * v) if t is None else t - lcr * v
            if t:
                new[kk] = t
            else:
                new.pop(kk, None)
        r = {k: v for k, v in new.items() if v}
    return r


def _from_view(ring: PolyRing, i: int, view: dict[int, MPoly]) -> MPoly:
    out = ring.zero()
    for k, c in view.items():
        out = out + c.shift(i, k)
    return out


def _primitive_view(view: dict[int, MPoly]) -> dict[int, MPoly]:
    g = None
    for c in view.values():
        g = c.monic() if g is None else poly_gcd(g, c)
        if g.is_constant():
            break
    if g is None or g.is_constant():
        lc = view[max(view)].leading_coeff()
        return {k: v * (1 / lc) for k, v in view.items()}
    return {k: v.divexact(g) for k, v in view.items()}


_PROBE_POINTS = ((2, 3, 5, 7, 11, 13, 17, 19), (-3, 7, -2, 5, 13, -11, 3, 23))


def _eval_at(p: MPoly, pt):
    total = 0
    for e, c in p.terms.items():
        m = 1
        for j, k in enumerate(e):
            if k:
                m *= pt[j] ** k
        total = total + c * m
    return total


def _udegree_of_gcd(f: list, g: list) -> int:
    """Degree of gcd for dense univariate coefficient lists (index = degree, nonzero top)."""
    while g:
        inv = 1 / g[-1]
        r = list(f)
        while len(r) >= len(g):
            q = r[-1] * inv
            off = len(r) - len(g)
            for k, gc in enumerate(g):
                r[off + k] = r[off + k] - q * gc
            r.pop()
            while r and not r[-1]:
                r.pop()
        f, g = g, r
    return len(f) - 1


def _coprime_by_evaluation(av: dict, bv: dict, nvars: int) -> bool:
    """True when an integer specialisation proves the primitive parts coprime.

    A common factor of degree k in the main variable survives as a factor of
    degree >= k at any point where neither leading coefficient vanishes.
    """
    for base in _PROBE_POINTS:
        pt = [base[j % len(base)] for j in range(nvars)]
        fa = [_eval_at(av[k], pt) if k in av else 0 for k in range(max(av) + 1)]
        fb = [_eval_at(bv[k], pt) if k in bv else 0 for k in range(max(bv) + 1)]
        if fa[-1] and fb[-1]:
            return _udegree_of_gcd(fa, fb) == 0
    return False


def poly_gcd(a: MPoly, b: MPoly) -> MPoly:
    """Monic gcd (leading coefficient 1 in grlex order); gcd(0, 0) = 0."""
    if not a.terms:
        return b.monic()
    if not b.terms:
        return a.monic()
    if a.is_constant() or b.is_constant():
        return a.ring.one()
    if a == b:
        return a.monic()
    if a.is_monomial():
        return _monomial_gcd(a, b)
    if b.is_monomial():
        return _monomial_gcd(b, a)
    va, vb = a.variables(), b.variables()
    only_a = va - vb
    if only_a:
        return poly_gcd(_content_in(a, min(only_a)), b)
    only_b = vb - va
    if only_b:
        return poly_gcd(a, _content_in(b, min(only_b)))
    # pull out common monomial factors first
    ring = a.ring
    mono = _monomial_gcd(ring.monomial(a.leading_exp()), a)
    mono_b = _monomial_gcd(ring.monomial(b.leading_exp()), b)
    m = _monomial_gcd(mono, mono_b)
    if sum(mono.leading_exp()):
        a = a.divexact(mono)
    if sum(mono_b.leading_exp()):
        b = b.divexact(mono_b)
    if a.is_constant() or b.is_constant():
        return m
    va, vb = a.variables(), b.variables()
    if va != vb:
        return (m * poly_gcd(a, b)).monic()
    # main variable: the one of smallest maximal degree
    i = min(va, key=lambda j: (max(a.degree_in(j), b.degree_in(j)), j))
    av, bv = a.coeffs_in(i), b.coeffs_in(i)
    ca = _content_in(a, i)
    cb = _content_in(b, i)
    c = poly_gcd(ca, cb)
    if not ca.is_constant():
        av = {k: v.divexact(ca) for k, v in av.items()}
    if not cb.is_constant():
        bv = {k: v.divexact(cb) for k, v in bv.items()}
    if max(av) < max(bv):
        av, bv = bv, av
    if _coprime_by_evaluation(av, bv, ring.nvars):
        return (m * c).monic()
    while True:
        r = _prem(av, bv)
        if not r:
            g = _from_view(ring, i, _primitive_view(bv))
            break
        if max(r) == 0:
            g = ring.one()
            break
        av, bv = bv, _primitive_view(r)
    return (m * c * g).monic()


def poly_lcm(a: MPoly, b: MPoly) -> MPoly:
    if not a.terms or not b.terms:
        return a.ring.zero()
    return (a * b.divexact(poly_gcd(a, b))).monic()
