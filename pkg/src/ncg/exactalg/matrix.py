"""Exact matrices over a RatFunc field with unique reduced row echelon forms."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from . import kernels
from .mpoly import MPoly, PolyRing, poly_gcd
from .ratfunc import RatFunc


def _cost(x: RatFunc) -> tuple:
    return (x.num.total_degree() + x.den.total_degree(), len(x.num.terms) + len(x.den.terms))


class ExactMatrix:
    """Immutable matrix of RatFunc entries over a fixed PolyRing."""

    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring: PolyRing, rows: Sequence[Sequence]):
        self.ring = ring
        lifted = []
        ncols = None
        for r in rows:
            row = tuple(_as_rf(ring, x) for x in r)
            if ncols is None:
                ncols = len(row)
            elif len(row) != ncols:
                raise ValueError("ragged matrix")
            lifted.append(row)
        self.rows = tuple(lifted)
        self.nrows = len(lifted)
        self.ncols = ncols or 0

    @classmethod
    def zeros(cls, ring: PolyRing, nrows: int, ncols: int) -> "ExactMatrix":
        z = RatFunc.const(ring, 0)
        m = cls(ring, [])
        m.rows = tuple(tuple(z for _ in range(ncols)) for _ in range(nrows))
        m.nrows, m.ncols = nrows, ncols
        return m

    @classmethod
    def identity(cls, ring: PolyRing, n: int) -> "ExactMatrix":
        return cls(ring, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def transpose(self) -> "ExactMatrix":
        m = ExactMatrix(self.ring, [])
        m.rows = tuple(zip(*self.rows)) if self.rows else ()
        m.nrows, m.ncols = self.ncols, self.nrows
        return m

    def __mul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        zero = RatFunc.const(self.ring, 0)
        cols = other.transpose().rows
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                s = zero
                for x, y in zip(r, c):
                    if x.num.terms and y.num.terms:
                        s = s + x * y
                row.append(s)
            out.append(row)
        res = ExactMatrix(self.ring, [])
        res.rows = tuple(tuple(r) for r in out)
        res.nrows, res.ncols = self.nrows, other.ncols
        return res

    def apply(self, vec: Sequence) -> list:
        zero = RatFunc.const(self.ring, 0)
        out = []
        for r in self.rows:
            s = zero
            for x, y in zip(r, vec):
                if x.num.terms and y:
                    s = s + x * y
            out.append(s)
        return out

    def rank(self) -> int:
        return len(rref(self)[1])

    def __str__(self):
        return "[" + ",\n ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "]"


def _as_rf(ring: PolyRing, x) -> RatFunc:
    if isinstance(x, RatFunc):
        if x.ring != ring:
            raise TypeError("matrix entry from another ring")
        return x
    if isinstance(x, MPoly):
        return RatFunc.from_poly(x)
    return RatFunc.const(ring, x)


def _all_rational_constants(m: ExactMatrix) -> bool:
    if not m.ring.field.is_rational:
        return False
    for r in m.rows:
        for x in r:
            if x.num.terms and not (x.is_constant()):
                return False
    return True


def _rref_rational(m: ExactMatrix):
    rows = []
    for r in m.rows:
        vals = [x.constant_value() if x.num.terms else Fraction(0) for x in r]
        den = 1
        for v in vals:
            if v:
                den = lcm(den, v.denominator)
        rows.append([int(v * den) for v in vals])
    red, pivots = kernels.int_rref(rows, m.ncols)
    ring = m.ring
    return [[RatFunc.const(ring, v) for v in r] for r in red], pivots


def _rref_field(m: ExactMatrix):
    """Plain Gauss-Jordan; used for constant matrices over an extension field."""
    rows = [list(r) for r in m.rows]
    pivots = []
    r = 0
    for c in range(m.ncols):
        cand = [i for i in range(r, len(rows)) if rows[i][c].num.terms]
        if not cand:
            continue
        best = min(cand, key=lambda i: _cost(rows[i][c]))
        rows[r], rows[best] = rows[best], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv if x.num.terms else x for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c].num.terms:
                f = rows[i][c]
                rows[i] = [x - f * y if y.num.terms else x for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _rref_fraction_free(m: ExactMatrix):
    """Bareiss elimination on polynomial rows, then back substitution."""
    ring = m.ring
    prows: list[list[MPoly]] = []
    for r in m.rows:
        den = ring.one()
        for x in r:
            if x.num.terms and not x.den.is_constant():
                g = poly_gcd(den, x.den)
                den = den * x.den.divexact(g)
        row = []
        for x in r:
            if not x.num.terms:
                row.append(ring.zero())
            else:
                row.append((x.num * den.divexact(x.den)) if not x.den.is_constant() else x.num * den * (1 / x.den.constant_value()))
        if any(p.terms for p in row):
            prows.append(row)
    nrows = len(prows)
    prev = ring.one()
    pivots = []
    r = 0
    for c in range(m.ncols):
        if r >= nrows:
            break
        cand = [i for i in range(r, nrows) if prows[i][c].terms]
        if not cand:
            continue
        best = min(cand, key=lambda i: (prows[i][c].total_degree(), len(prows[i][c].terms)))
        prows[r], prows[best] = prows[best], prows[r]
        prow = prows[r]
        piv = prow[c]
        for i in range(r + 1, nrows):
            row = prows[i]
            f = row[c]
            for j in range(c, m.ncols):
                v = piv * row[j]
                if f.terms and prow[j].terms:
                    v = v - f * prow[j]
                row[j] = v.divexact(prev) if not prev.is_constant() else v * (1 / prev.constant_value())
        prev = piv
        pivots.append(c)
        r += 1
    out = [[RatFunc.from_poly(p) for p in prows[i]] for i in range(r)]
    for k in range(r - 1, -1, -1):
        c = pivots[k]
        inv = out[k][c].inverse()
        out[k] = [x * inv if x.num.terms else x for x in out[k]]
        row = out[k]
        for i in range(k):
            f = out[i][c]
            if f.num.terms:
                out[i] = [x - f * y if y.num.terms else x for x, y in zip(out[i], row)]
    return out, pivots


def rref(m: ExactMatrix, method: str | None = None) -> tuple[ExactMatrix, tuple[int, ...]]:
    """Unique reduced row echelon form (zero rows dropped) and pivot columns.

    ``method`` forces one of "rational", "field", "fraction_free"; by default
    rational constant matrices go to the integer kernel, other constant
    matrices to Gauss-Jordan, and symbolic ones to fraction-free elimination.
    """
    if m.nrows == 0 or m.ncols == 0:
        return ExactMatrix.zeros(m.ring, 0, m.ncols), ()
    if method is None:
        if _all_rational_constants(m):
            method = "rational"
        elif m.ring.nvars == 0:
            method = "field"
        else:
            method = "fraction_free"
    if method == "rational":
        rows, piv = _rref_rational(m)
    elif method == "field":
        rows, piv = _rref_field(m)
    elif method == "fraction_free":
        rows, piv = _rref_fraction_free(m)
    else:
        raise ValueError(f"unknown rref method {method!r}")
    out = ExactMatrix(m.ring, [])
    out.rows = tuple(tuple(r) for r in rows)
    out.nrows, out.ncols = len(rows), m.ncols
    return out, tuple(piv)


def kernel(m: ExactMatrix, method: str | None = None) -> list[list[RatFunc]]:
    """Basis of {x : m x = 0}, one vector per free column."""
    red, piv = rref(m, method)
    ring = m.ring
    zero, one = RatFunc.const(ring, 0), RatFunc.const(ring, 1)
    pivset = set(piv)
    basis = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = [zero] * m.ncols
        v[f] = one
        for i, p in enumerate(piv):
            v[p] = -red.rows[i][f]
        basis.append(v)
    return basis


def solve(m: ExactMatrix, rhs: Sequence) -> list[RatFunc] | None:
    """One solution of m x = rhs (free variables set to 0), or None."""
    aug = ExactMatrix(m.ring, [list(r) + [b] for r, b in zip(m.rows, rhs)])
    red, piv = rref(aug)
    if piv and piv[-1] == m.ncols:
        return None
    ring = m.ring
    x = [RatFunc.const(ring, 0)] * m.ncols
    for i, p in enumerate(piv):
        x[p] = red.rows[i][m.ncols]
    return x


def rank(m: ExactMatrix) -> int:
    return len(rref(m)[1])
