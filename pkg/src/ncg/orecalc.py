"""The 2D quantum spacetime [r, t] = lam r with central 1-forms dr and v = r dt - t dr.

Coefficients are normally ordered Laurent-in-r, polynomial-in-t elements; the
forms have basis {1}, {dr, v}, {Vol = v ^ dr} and nothing above degree 2.
"""

from __future__ import annotations

from math import comb
from typing import Mapping

from .conncore.calculus import Calculus, Form
from .conncore.connections import LeftConnection, Metric
from .conncore.modules import FormModule, TensorForm
from .exactalg import PolyRing, RatFunc, parse_rf

DR, V = 0, 1
VOL = 0


class OreElement:
    """Finite sum of c * r^m t^n, keyed by (m, n); lam is the commutator scalar."""

    __slots__ = ("terms", "lam", "ring")

    def __init__(self, ring: PolyRing, lam: RatFunc, terms: Mapping | None = None):
        self.ring = ring
        self.lam = lam
        self.terms = {k: c for k, c in (terms or {}).items() if c.num.terms}

    def _new(self, terms):
        return OreElement(self.ring, self.lam, terms)

    def __add__(self, o):
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out[k] + c if k in out else c
        return self._new(out)

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        return ore_mul(self, o)

    def scale(self, s):
        return self._new({k: c * s for k, c in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, o):
        return isinstance(o, OreElement) and self.terms == o.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms)))

    def coeffs(self):
        return [self.terms[k] for k in sorted(self.terms)]

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (m, n) in sorted(self.terms, key=lambda k: (-k[0] - k[1], -k[0])):
            c = self.terms[(m, n)]
            mono = "*".join(p for p in (_pw("r", m), _pw("t", n)) if p)
            if not mono:
                parts.append(f"({c})")
            elif c == RatFunc.const(self.ring, 1):
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"OreElement({self.render()})"


def _pw(x, k):
    return "" if k == 0 else x if k == 1 else f"{x}^{k}"


def ore_mul(x: OreElement, y: OreElement) -> OreElement:
    """(r^m t^n)(r^p t^q) = r^{m+p} (t - p lam)^n t^q, from t r^p = r^p (t - p lam)."""
    lam = x.lam
    out: dict = {}
    for (m, n), c in x.terms.items():
        for (p, q), e in y.terms.items():
            ce = c * e
            shift = lam * (-p)
            for k in range(n + 1):
                s = ce * comb(n, k)
                if n - k:
                    s = s * shift ** (n - k)
                key = (m + p, k + q)
                out[key] = out[key] + s if key in out else s
    return x._new(out)


class OreCalculus(Calculus):
    """Backend with central basis forms, so every twist is trivial."""

    commutative = False
    finite_dimensional = False
    top_degree = 2

    _LABELS = {0: ["1"], 1: ["dr", "v"], 2: ["Vol"]}

    def __init__(self, ring: PolyRing, lam="lam"):
        self.ring = ring
        self.lam = lam if isinstance(lam, RatFunc) else parse_rf(str(lam), ring)
        self.name = f"bicross[lam={self.lam}]"
        one = RatFunc.const(ring, 1)
        # wedge table on degree-1 basis: dr^dr = 0, dr^v = -Vol, v^dr = Vol, v^v = lam Vol
        self._w11 = {(DR, V): {VOL: -one}, (V, DR): {VOL: one}, (V, V): {VOL: self.lam} if self.lam else {}}

    # -- algebra ------------------------------------------------------------------
    def elem(self, terms: Mapping) -> OreElement:
        return OreElement(self.ring, self.lam, {k: self.coerce_scalar(c) for k, c in terms.items()})

    def mono(self, m: int = 0, n: int = 0, c=1) -> OreElement:
        return self.elem({(m, n): c})

    def zero(self):
        return OreElement(self.ring, self.lam, {})

    def one(self):
        return self.mono()

    def r(self, m: int = 1):
        return self.mono(m, 0)

    def t(self, n: int = 1):
        return self.mono(0, n)

    def twist(self, n, i, a):
        return a

    def alg_coeffs(self, a):
        return a.coeffs()

    def render_alg(self, a):
        return a.render()

    def probes(self):
        return [self.r(), self.t(), self.r(-1)]

    def random_alg(self, rng, support: int = 2, lo: int = -3, hi: int = 3):
        terms = {}
        for _ in range(support):
            terms[(rng.randint(-2, 2), rng.randint(0, 2))] = rng.choice([k for k in range(lo, hi + 1) if k])
        return self.elem(terms)

    def substitute_alg(self, a, values, target):
        return OreElement(target.ring, target.lam, {k: c.substitute(values, target.ring) for k, c in a.terms.items()})

    def specialize(self, values, ring):
        return OreCalculus(ring, self.lam.substitute(values, ring))

    # -- graded structure -------------------------------------------------------------
    def dim(self, n):
        return {0: 1, 1: 2, 2: 1}.get(n, 0)

    def basis_label(self, n, i):
        return self._LABELS[n][i]

    def wedge_basis(self, n, i, m, j):
        if n + m > 2:
            return {}
        one = RatFunc.const(self.ring, 1)
        if n == 0:
            return {j: one}
        if m == 0:
            return {i: one}
        return self._w11.get((i, j), {})

    def d_alg(self, a):
        """Leibniz on each r^m t^n with dt = r^-1 v + r^-1 t dr pushed to left coefficients."""
        dr_c, v_c = self.zero(), self.zero()
        rinv = self.r(-1)
        for (m, n), c in a.terms.items():
            if m:
                dr_c = dr_c + self.mono(m - 1, n, c * m)
            if n:
                head = self.mono(m, 0, c)
                for k in range(n):
                    # t^k dt t^(n-1-k), with dt . t^j = r^-1 t^j v + r^-1 t^(j+1) dr
                    pre = head * self.t(k) * rinv
                    v_c = v_c + pre * self.t(n - 1 - k)
                    dr_c = dr_c + pre * self.t(n - k)
        return Form(self, 1, {DR: dr_c, V: v_c})

    def d_basis(self, n, i):
        if n == 1 and i == V:
            return Form(self, 2, {VOL: self.mono(-1, 0, -2)})
        return Form(self, n + 1, {})

    def one_form_presentation(self, b):
        if b == DR:
            return [(self.one(), self.r())]
        return [(self.r(), self.t()), (-self.t(), self.r())]

    def wedge_kernel(self):
        one = self.one()
        return [
            {(DR, DR): one},
            {(DR, V): one, (V, DR): one},
            {(V, V): one, (V, DR): one.scale(-self.lam)},
        ]

    def split_basis(self, n, i):
        if n == 1:
            return i, Form(self, 0, {0: self.one()})
        if n == 2:
            return V, Form(self, 1, {DR: self.one()})
        raise ValueError("no basis in this degree")

    # -- conveniences -----------------------------------------------------------------
    def dr(self, coeff=None) -> Form:
        return self.basis_form(1, DR, coeff)

    def v(self, coeff=None) -> Form:
        return self.basis_form(1, V, coeff)

    def vol(self, coeff=None) -> Form:
        return self.basis_form(2, VOL, coeff)

    def dt(self) -> Form:
        rinv = self.r(-1)
        return Form(self, 1, {V: rinv, DR: rinv * self.t()})


def ore_d(w: Form) -> Form:
    return w.d()


PARAMS = ("alpha", "beta", "gamma", "delta", "alphap", "betap", "gammap", "deltap")


def bicross_ring(extra=("lam", "b"), field=None) -> PolyRing:
    names = tuple(PARAMS) + tuple(extra)
    return PolyRing(names, field) if field is not None else PolyRing(names)


def homogeneous_connection(calc: OreCalculus, params: Mapping | None = None) -> LeftConnection:
    """nabla dr = r^-1(alpha v(x)v + beta v(x)dr + gamma dr(x)v + delta dr(x)dr), primed for nabla v.

    ``params`` maps the eight names to RatFuncs (or strings); missing names are
    read as ring variables of the same name.
    """
    params = dict(params or {})
    vals = {}
    for p in PARAMS:
        x = params.get(p, p)
        vals[p] = x if isinstance(x, RatFunc) else parse_rf(str(x), calc.ring)
    E = FormModule(calc, 1)
    rinv = calc.r(-1)

    def value(a, b, c, d):
        # a v(x)v + b v(x)dr + c dr(x)v + d dr(x)dr, all over r
        comps = {
            V: Form(calc, 1, {V: rinv.scale(a), DR: rinv.scale(c)}),
            DR: Form(calc, 1, {V: rinv.scale(b), DR: rinv.scale(d)}),
        }
        return TensorForm(E, 1, comps)

    g = vals
    return LeftConnection(E, [
        value(g["alpha"], g["beta"], g["gamma"], g["delta"]),
        value(g["alphap"], g["betap"], g["gammap"], g["deltap"]),
    ])


def bicross_metric(calc: OreCalculus, b="b") -> Metric:
    """g = ((1 + b lam^2) dr - lam b v)(x)dr + b v(x)v with its inverse pairing."""
    ring = calc.ring
    b = b if isinstance(b, RatFunc) else parse_rf(str(b), ring)
    lam = calc.lam
    one = RatFunc.const(ring, 1)
    q = one + b * lam * lam
    g = {(DR, DR): q, (V, DR): -(lam * b), (V, V): b}
    pairing = {(DR, DR): one / q, (V, DR): lam / q, (V, V): one / b}
    el = lambda s: calc.one().scale(s)
    return Metric(calc, {k: el(s) for k, s in g.items()}, {k: el(s) for k, s in pairing.items()})


def curvature_coefficients(conn: LeftConnection) -> tuple:
    """(c1, c2, c3, c4) with R(dr) = -r^-2 Vol(x)(c1 v + c2 dr), R(v) = -r^-2 Vol(x)(c3 v + c4 dr).

    Raises ValueError if the curvature is not of that shape.
    """
    calc = conn.calc
    R = conn.curvature()
    out = []
    for gen in (DR, V):
        val = R.values[gen]
        for target in (V, DR):
            a = val.component(target).c.get(VOL, calc.zero())
            rest = {k: c for k, c in a.terms.items() if k != (-2, 0)}
            if rest:
                raise ValueError(f"curvature coefficient {a.render()} is not a constant over r^2")
            out.append(-a.terms.get((-2, 0), RatFunc.const(calc.ring, 0)))
    return tuple(out)
