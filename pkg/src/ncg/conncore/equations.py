"""Polynomial condition sets extracted from symbolic residuals."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from ..exactalg import ExactMatrix, MPoly, PolyRing, RatFunc, parse_rf, rank


def _normalize(p: MPoly) -> MPoly:
    return p.monic()


@dataclass
class EquationSet:
    """Numerators that must vanish plus denominators that must not."""

    ring: PolyRing
    polys: list = field(default_factory=list)
    denominators: list = field(default_factory=list)

    def __post_init__(self):
        self.polys = _dedup(self.polys)
        self.denominators = _dedup(self.denominators)

    @classmethod
    def from_values(cls, ring: PolyRing, values: Iterable[RatFunc]) -> "EquationSet":
        polys, dens = [], []
        for v in values:
            if v.ring != ring:
                raise TypeError("residual from another coefficient ring")
            if v.num.terms:
                if v.num.is_constant():
                    polys.append(ring.one())
                else:
                    polys.append(v.num)
            if not v.den.is_constant():
                dens.append(v.den)
        return cls(ring, polys, dens)

    @classmethod
    def from_residuals(cls, ring: PolyRing, residuals: Iterable) -> "EquationSet":
        vals = []
        for r in residuals:
            vals.extend(r.coeffs())
        return cls.from_values(ring, vals)

    @classmethod
    def parse(cls, ring: PolyRing, texts: Iterable[str], symbols: Mapping | None = None) -> "EquationSet":
        """Accepts 'lhs = rhs' or chains 'x = y = z' (consecutive differences)."""
        polys = []
        for t in texts:
            parts = [s.strip() for s in t.split("=")]
            vals = [parse_rf(p, ring, symbols) for p in parts]
            if len(vals) == 1:
                vals.append(RatFunc.const(ring, 0))
            for x, y in zip(vals, vals[1:]):
                diff = x - y
                if diff.num.terms:
                    polys.append(diff.num)
        return cls(ring, polys, [])

    def saturate(self, names: Iterable[str]) -> "EquationSet":
        """Strip powers of the named variables from every condition; they become genericity conditions."""
        polys = list(self.polys)
        dens = list(self.denominators)
        for n in names:
            i = self.ring.index(n)
            polys = [p.shift(i, -p.min_degree_in(i)) for p in polys]
            dens.append(self.ring.var(n))
        return EquationSet(self.ring, polys, dens)

    def __len__(self):
        return len(self.polys)

    def is_trivial(self) -> bool:
        return not self.polys

    def is_inconsistent(self) -> bool:
        return any(p.is_constant() for p in self.polys)

    def propagate_monomials(self) -> tuple["EquationSet", list[str]]:
        """Repeatedly use c*x^k = 0 to set x = 0 in the other conditions.

        Returns the reduced set and the names forced to zero. Sound over a field:
        a monomial vanishes only if one of its variables does, and single-variable
        monomials leave no choice.
        """
        polys = list(self.polys)
        forced: list[str] = []
        while True:
            hit = next((p for p in polys if p.is_monomial() and len(p.variables()) == 1), None)
            if hit is None:
                return EquationSet(self.ring, polys, self.denominators), forced
            i = hit.variables().pop()
            forced.append(self.ring.names[i])
            zero = {i: self.ring.zero()}
            polys = [q for q in (p.substitute(zero) for p in polys) if q.terms]

    def render(self) -> list[str]:
        return [f"{p} = 0" for p in self.polys]

    # -- substitution ------------------------------------------------------------------------
    def evaluate(self, values: Mapping[str, RatFunc], target: PolyRing) -> tuple[list, list]:
        one = RatFunc.const(self.ring, 1)
        nums = [(one * p).substitute(values, target) for p in self.polys]
        dens = [(one * p).substitute(values, target) for p in self.denominators]
        return nums, dens

    def vanishes_on(self, values: Mapping[str, RatFunc], target: PolyRing) -> tuple[bool, str]:
        try:
            nums, dens = self.evaluate(values, target)
        except ZeroDivisionError as exc:
            return False, f"substitution undefined: {exc}"
        for p, v in zip(self.polys, nums):
            if not v.is_zero():
                return False, f"{p} -> {v}"
        for p, v in zip(self.denominators, dens):
            if v.is_zero():
                return False, f"genericity denominator {p} vanishes"
        return True, ""

    # -- comparison ----------------------------------------------------------------------------
    def same_up_to_scalars(self, other: "EquationSet") -> bool:
        return set(self.polys) == set(other.polys)

    def span_equal(self, other: "EquationSet") -> bool:
        a, b = _span_rank(self.ring, self.polys), _span_rank(self.ring, other.polys)
        both = _span_rank(self.ring, self.polys + other.polys)
        return a == both == b

    def contains_span_of(self, other: "EquationSet") -> bool:
        return _span_rank(self.ring, self.polys) == _span_rank(self.ring, self.polys + other.polys)

    def probe_agreement(self, other: "EquationSet", points: Iterable[Mapping[str, RatFunc]], target: PolyRing) -> tuple[bool, str]:
        """Both sets vanish, or both fail to vanish, at every point."""
        for k, pt in enumerate(points):
            a = all(v.is_zero() for v in self.evaluate(pt, target)[0])
            b = all(v.is_zero() for v in other.evaluate(pt, target)[0])
            if a != b:
                return False, f"point {k}: {'self' if a else 'other'} vanishes alone"
        return True, ""

    def grid_agreement(self, other: "EquationSet", values=(-2, -1, 0, 1, 2)) -> tuple[bool, str, int]:
        """Compare zero patterns over every integer point of a grid in all ring variables.

        Returns (agree, witness, number of common zeros found).
        """
        if other.ring != self.ring:
            raise TypeError("equation sets over different rings")
        common = 0
        for pt in itertools.product([Fraction(v) for v in values], repeat=self.ring.nvars):
            a = all(not p(*pt) for p in self.polys)
            b = all(not p(*pt) for p in other.polys)
            if a != b:
                names = ", ".join(f"{n}={v}" for n, v in zip(self.ring.names, pt))
                return False, f"({names}): only {'first' if a else 'second'} set vanishes", common
            common += a
        return True, "", common

    def equivalent(self, other: "EquationSet", grid: bool = True) -> tuple[bool, str]:
        """Scalar-multiple matching, else linear span equality; then grid probing both ways."""
        if self.same_up_to_scalars(other):
            how = "identical up to scalars"
        elif self.span_equal(other):
            how = "same linear span"
        else:
            return False, "neither scalar matching nor span equality holds"
        if grid:
            ok, why, common = self.grid_agreement(other, default_grid(self.ring.nvars))
            if not ok:
                return False, why
            how += f"; grid zero patterns agree ({common} common zeros)"
        return True, how


def default_grid(nvars: int, budget: int = 4000) -> tuple:
    """Integer grid values so that the full product stays within the budget."""
    for vals in ((-2, -1, 0, 1, 2, 3), (-2, -1, 0, 1, 2), (-1, 0, 1, 2), (-1, 0, 1), (0, 1)):
        if len(vals) ** nvars <= budget:
            return vals
    return (0, 1)

def _dedup(polys):
    out, seen = [], set()
    for p in polys:
        if not p.terms:
            continue
        q = _normalize(p)
        if q not in seen:
            seen.add(q)
            out.append(q)
    return sorted(out, key=lambda p: (p.total_degree(), str(p)))


def _span_rank(ring: PolyRing, polys) -> int:
    if not polys:
        return 0
    monos = sorted({e for p in polys for e in p.terms})
    rows = [[p.terms.get(m, 0) for m in monos] for p in polys]
    return rank(ExactMatrix(PolyRing((), ring.field), rows))

