"""Graded left-module maps E -> Omega^n (x) F and their composition."""

from __future__ import annotations

from typing import Sequence

from .modules import Module, TensorForm


class GradedMorphism:
    """phi: E -> Omega^n (x)_A F, stored by its values on the generators of E."""

    __slots__ = ("source", "target", "degree", "values")

    def __init__(self, source: Module, target: Module, degree: int, values: Sequence[TensorForm]):
        values = list(values)
        if len(values) != source.ngens():
            raise ValueError("one value per source generator is required")
        for v in values:
            if v.module != target or v.deg != degree:
                raise TypeError("morphism value lives in the wrong space")
        self.source, self.target, self.degree, self.values = source, target, degree, values

    @classmethod
    def identity(cls, m: Module) -> "GradedMorphism":
        return cls(m, m, 0, [m.gen(i) for i in range(m.ngens())])

    @classmethod
    def projected(cls, source: Module, target: Module, degree: int, raw: Sequence[TensorForm]) -> "GradedMorphism":
        """Well-defined map on a projective source: g_i -> sum_k P_ik raw_k."""
        P = source.projector
        if P is None:
            return cls(source, target, degree, raw)
        if P is True:
            raise TypeError("projected() needs a source with an explicit projector")
        vals = []
        for row in P:
            acc = target.zero(degree)
            for k, p in enumerate(row):
                if not p.is_zero():
                    acc = acc + raw[k].left(p)
            vals.append(acc)
        return cls(source, target, degree, vals)

    @classmethod
    def zero(cls, source: Module, target: Module, degree: int) -> "GradedMorphism":
        return cls(source, target, degree, [target.zero(degree) for _ in range(source.ngens())])

    def __call__(self, x: TensorForm) -> TensorForm:
        """(id ^ phi): Omega^p (x) E -> Omega^{p+n} (x) F."""
        if x.module != self.source:
            raise TypeError("argument is not in the source module")
        out = self.target.zero(x.deg + self.degree)
        for i, w in x.comps.items():
            v = self.values[i]
            if v:
                out = out + v.wedge_left(w)
        return TensorForm(self.target, out.deg, out.comps)

    def compose(self, other: "GradedMorphism") -> "GradedMorphism":
        """self o other = (id ^ self) other."""
        if other.target != self.source:
            raise TypeError("morphisms are not composable")
        return GradedMorphism(other.source, self.target, self.degree + other.degree, [self(v) for v in other.values])

    __matmul__ = compose

    def _same(self, o):
        if (o.source, o.target, o.degree) != (self.source, self.target, self.degree):
            raise TypeError("morphisms of different shapes")

    def __add__(self, o):
        self._same(o)
        return GradedMorphism(self.source, self.target, self.degree, [a + b for a, b in zip(self.values, o.values)])

    def __sub__(self, o):
        self._same(o)
        return GradedMorphism(self.source, self.target, self.degree, [a - b for a, b in zip(self.values, o.values)])

    def __neg__(self):
        return GradedMorphism(self.source, self.target, self.degree, [-a for a in self.values])

    def scale(self, s):
        return GradedMorphism(self.source, self.target, self.degree, [a.scale(s) for a in self.values])

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def __eq__(self, o):
        if not isinstance(o, GradedMorphism):
            return NotImplemented
        return (o.source, o.target, o.degree) == (self.source, self.target, self.degree) and o.values == self.values

    __hash__ = None

    def coeffs(self):
        for v in self.values:
            yield from v.coeffs()

    def substitute(self, values, source: Module, target: Module) -> "GradedMorphism":
        return GradedMorphism(source, target, self.degree, [v.substitute(values, target) for v in self.values])

    def render(self) -> str:
        return "; ".join(f"{self.source.label(i)} -> {v.render()}" for i, v in enumerate(self.values))

    def __repr__(self):
        return f"GradedMorphism[{self.degree}]({self.render()})"

    # -- module-map diagnostics -------------------------------------------------------------
    def well_defined_residuals(self) -> list[TensorForm]:
        """For a projective source: phi(g_i) - sum_k P_ik phi(g_k)."""
        P = self.source.projector
        if P is None or P is True:
            return []
        out = []
        for i, row in enumerate(P):
            acc = self.target.zero(self.degree)
            for k, p in enumerate(row):
                if not p.is_zero():
                    acc = acc + self.values[k].left(p)
            out.append(self.values[i] - acc)
        return out

    def right_module_residuals(self, probes=None) -> list[TensorForm]:
        """phi(g_i . a) - phi(g_i) . a over probe algebra elements a."""
        calc = self.source.calc
        probes = calc.probes() if probes is None else probes
        out = []
        for i, v in enumerate(self.values):
            for a in probes:
                out.append(v.left(self.source.twist(i, a)) - v.right(a))
        return out

