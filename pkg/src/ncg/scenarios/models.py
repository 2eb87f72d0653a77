"""Concrete backends used by the scenarios: S3 with its 3D calculus and the bicross spacetime."""

from __future__ import annotations

from typing import Mapping, Sequence

from ..conncore.calculus import Form
from ..conncore.connections import LeftConnection, Metric, derive_sigma
from ..conncore.modules import FormModule, TensorForm
from ..exactalg import PolyRing, RatFunc, named_field, parse_rf
from ..groupcalc import CalculusSpec, FiniteGroup, GroupCalculus
from .. import orecalc

S3_PARAMS = ("a", "b", "c", "d", "e")
S3_LABELS = ("u", "v", "w")


def values_in(ring: PolyRing, subs: Mapping[str, object], names: Sequence[str], symbols=None) -> dict:
    """Full substitution map: names missing from ``subs`` stay as themselves (or must be ring variables)."""
    out = {}
    for n in names:
        x = subs.get(n, n)
        out[n] = x if isinstance(x, RatFunc) else parse_rf(str(x), ring, symbols)
    return out


def point_ring(field: str = "QQ", free: Sequence[str] = ()) -> PolyRing:
    return PolyRing(tuple(free), named_field(field))


class S3Model:
    """Functions on S3 with the calculus given by the three transpositions."""

    def __init__(self, ring: PolyRing | None = None):
        self.group = FiniteGroup.symmetric3()
        self.spec = CalculusSpec.from_labels(self.group, list(S3_LABELS))
        self.ring = ring if ring is not None else PolyRing(S3_PARAMS)
        self.calc = GroupCalculus(self.spec, self.ring)

    def over(self, ring: PolyRing) -> "S3Model":
        m = S3Model.__new__(S3Model)
        m.group, m.spec, m.ring = self.group, self.spec, ring
        m.calc = self.calc.specialize({}, ring)
        return m

    @staticmethod
    def christoffel(x: int, b: int, c: int, p: Mapping[str, RatFunc]) -> RatFunc:
        """Gamma^x_{bc} of the conjugation-invariant family."""
        if b == x and c == x:
            return p["a"] - 1
        if b == x:
            return p["e"]
        if c == x:
            return p["d"] - 1
        if b == c:
            return p["b"]
        return p["c"]

    def connection(self, subs: Mapping[str, object] | None = None, symbols=None, with_sigma: bool = True) -> LeftConnection:
        """nabla e_x = -Gamma^x_{bc} e_b (x) e_c; unspecified parameters stay symbolic."""
        calc = self.calc
        p = values_in(self.ring, subs or {}, S3_PARAMS, symbols)
        E = FormModule(calc, 1)
        vals = []
        for x in range(3):
            comps = {}
            for c in range(3):
                w = Form(calc, 1, {})
                for b in range(3):
                    g = self.christoffel(x, b, c, p)
                    if g.num.terms:
                        w = w + calc.basis_form(1, b, calc.const(-g))
                comps[c] = w
            vals.append(TensorForm(E, 1, comps))
        conn = LeftConnection(E, vals)
        if with_sigma:
            conn.sigma = derive_sigma(conn)
        return conn

    def euclidean(self) -> Metric:
        one = self.calc.one()
        diag = {(i, i): one for i in range(3)}
        return Metric(self.calc, dict(diag), dict(diag))

    def tensor(self, terms: Sequence[Sequence], symbols=None, ring: PolyRing | None = None) -> TensorForm:
        """Sum of coef * e_{w1}^...^e_{wk} (x) e_t from rows [coef, word, target]."""
        calc = self.calc
        ring = ring or self.ring
        E = FormModule(calc, 1)
        out = None
        for coef, word, target in terms:
            c = parse_rf(str(coef), ring, symbols)
            w = calc.word(list(word)).left(calc.const(c))
            t = TensorForm(E, len(word), {S3_LABELS.index(target): w})
            out = t if out is None else out + t
        return out


def s3_point(field: str, subs: Mapping[str, str], free: Sequence[str] = (), symbols=None):
    """(model over the point ring, substitution values) for a parameter point or family."""
    ring = point_ring(field, free)
    model = S3Model(PolyRing(S3_PARAMS)).over(ring)
    vals = {}
    for n in S3_PARAMS:
        vals[n] = parse_rf(str(subs[n]) if n in subs else n, ring, symbols)
    return model, vals


class BicrossModel:
    """The bicross spacetime with the eight-parameter homogeneous connection."""

    def __init__(self, ring: PolyRing | None = None):
        self.ring = ring if ring is not None else orecalc.bicross_ring()
        self.calc = orecalc.OreCalculus(self.ring)

    def values(self, subs: Mapping[str, object] | None = None) -> dict:
        """Substitution map over the model ring, families written in terms of the free names."""
        subs = dict(subs or {})
        base = {n: RatFunc.var(self.ring, n) for n in self.ring.names}
        for k, v in subs.items():
            base[k] = v if isinstance(v, RatFunc) else parse_rf(str(v), self.ring)
        # a family may refer to names it also fixes; resolve until stable
        for _ in range(len(subs) + 1):
            nxt = {k: v.substitute(base, self.ring) for k, v in base.items()}
            if all(nxt[k] == base[k] for k in base):
                break
            base = nxt
        return base

    def connection(self, subs: Mapping[str, object] | None = None, with_sigma: bool = True) -> LeftConnection:
        vals = self.values(subs)
        calc = self.calc.specialize(vals, self.ring)
        conn = orecalc.homogeneous_connection(calc, {k: vals[k] for k in orecalc.PARAMS})
        if with_sigma:
            conn.sigma = derive_sigma(conn)
        return conn

    def metric(self, conn: LeftConnection | None = None) -> Metric:
        calc = conn.calc if conn is not None else self.calc
        return orecalc.bicross_metric(calc)
