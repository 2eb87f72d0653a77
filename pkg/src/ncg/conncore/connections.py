"""Left and bimodule connections, curvature, torsion, braidings and metrics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .calculus import Form
from .modules import AlgebraModule, FormModule, Module, TensorForm, TensorModule, wedge_out
from .morphisms import GradedMorphism


class LeftConnection:
    """nabla on a based module, determined by its values on generators."""

    def __init__(self, module: Module, values: Sequence[TensorForm], sigma: "SigmaMap | None" = None):
        values = list(values)
        if len(values) != module.ngens():
            raise ValueError("one value per generator is required")
        for v in values:
            if v.module != module or v.deg != 1:
                raise TypeError("connection values must lie in Omega^1 (x) E")
        self.module = module
        self.values = values
        self.sigma = sigma

    @property
    def calc(self):
        return self.module.calc

    @classmethod
    def trivial(cls, module: Module) -> "LeftConnection":
        """nabla(g_i) = 0 (a genuine connection only on free modules)."""
        return cls(module, [module.zero(1) for _ in range(module.ngens())])

    def apply_n(self, x: TensorForm) -> TensorForm:
        """nabla^[n](w (x) g) = dw (x) g + (-1)^n w ^ nabla g."""
        if x.module != self.module:
            raise TypeError("element is not in the connection's module")
        n = x.deg
        m = self.module
        out: dict = {}
        for i, w in x.comps.items():
            dw = w.d()
            if dw:
                out[i] = out[i] + dw if i in out else dw
        acc = TensorForm(m, n + 1, out, canonical=False)
        sign = -1 if n % 2 else 1
        for i, w in x.comps.items():
            v = self.values[i]
            if v:
                t = v.wedge_left(w)
                acc = acc + (t if sign == 1 else -t)
        return TensorForm(m, n + 1, acc.comps)

    __call__ = apply_n

    def curvature(self) -> GradedMorphism:
        return GradedMorphism(self.module, self.module, 2, [self.apply_n(v) for v in self.values])

    def __add__(self, phi: GradedMorphism) -> "LeftConnection":
        """nabla + phi for a degree-1 left-module map phi: E -> Omega^1 (x) E."""
        if phi.degree != 1 or phi.source != self.module or phi.target != self.module:
            raise TypeError("only degree-1 endomorphisms can be added to a connection")
        return LeftConnection(self.module, [a + b for a, b in zip(self.values, phi.values)])

    def leibniz_residuals(self) -> list[TensorForm]:
        """On a projective module, nabla(g_i) must equal nabla(sum_k P_ik g_k)."""
        P = self.module.projector
        if P is None or P is True:
            return []
        m = self.module
        out = []
        for i, row in enumerate(P):
            acc = m.zero(1)
            for k, p in enumerate(row):
                if not p.is_zero():
                    acc = acc + self.apply_n(m.gen(k, p))
            out.append(self.values[i] - acc)
        return out

    def coeffs(self):
        for v in self.values:
            yield from v.coeffs()

    def render(self) -> str:
        return "; ".join(f"nabla {self.module.label(i)} = {v.render()}" for i, v in enumerate(self.values))


def algebra_connection(calc) -> LeftConnection:
    """(A, d) with nabla(1) = 0 and sigma(1 (x) xi) = xi (x) 1."""
    A = AlgebraModule(calc)
    conn = LeftConnection.trivial(A)
    conn.sigma = SigmaMap(A, [[TensorForm(A, 1, {0: calc.basis_form(1, b)}) for b in range(calc.dim(1))]])
    return conn


# ---------------------------------------------------------------------------
# torsion, cotorsion, derivative of morphisms
# ---------------------------------------------------------------------------

def torsion(conn: LeftConnection) -> GradedMorphism:
    """T = ^nabla - d as a degree-2 map Omega^1 -> Omega^2 (x) A."""
    m = conn.module
    if not isinstance(m, FormModule) or m.n != 1:
        raise TypeError("torsion needs a connection on Omega^1")
    calc = m.calc
    A = AlgebraModule(calc)
    vals = []
    for b, v in enumerate(conn.values):
        t = wedge_out(v) - calc.basis_form(1, b).d()
        vals.append(TensorForm(A, 2, {0: t}))
    return GradedMorphism(m, A, 2, vals)


def tau_morphism(calc) -> GradedMorphism:
    """xi -> xi (x) 1 as a degree-1 map Omega^1 -> Omega^1 (x) A."""
    E = FormModule(calc, 1)
    A = AlgebraModule(calc)
    return GradedMorphism(E, A, 1, [TensorForm(A, 1, {0: calc.basis_form(1, b)}) for b in range(calc.dim(1))])


def cotorsion(conn: LeftConnection, g: TensorForm) -> TensorForm:
    """(d (x) id - id ^ nabla) g for g written as sum_c w_c (x) e_c."""
    if g.module != conn.module or g.deg != 1:
        raise TypeError("metric must be given as a degree-1 tensor form over Omega^1")
    return conn.apply_n(g)


def morphism_derivative(psi: GradedMorphism, conn_e: LeftConnection, conn_f: LeftConnection) -> GradedMorphism:
    """nabla nabla(psi) = nabla_F^[n] o psi - (id ^ psi) nabla_E."""
    if psi.source != conn_e.module or psi.target != conn_f.module:
        raise TypeError("connections do not match the morphism's modules")
    vals = [conn_f.apply_n(psi.values[i]) - psi(conn_e.values[i]) for i in range(psi.source.ngens())]
    return GradedMorphism(psi.source, psi.target, psi.degree + 1, vals)


def dd_commutator(psi: GradedMorphism, conn_e: LeftConnection, conn_f: LeftConnection) -> GradedMorphism:
    """nabla nabla(nabla nabla psi) - R_F o psi + psi o R_E (identically zero)."""
    dd = morphism_derivative(morphism_derivative(psi, conn_e, conn_f), conn_e, conn_f)
    return dd - conn_f.curvature().compose(psi) + psi.compose(conn_e.curvature())


# ---------------------------------------------------------------------------
# braiding sigma
# ---------------------------------------------------------------------------

class SigmaMap:
    """sigma: E (x) Omega^1 -> Omega^1 (x) E, extended to Omega^n by splitting basis forms."""

    def __init__(self, module: Module, values: Sequence[Sequence[TensorForm]]):
        self.module = module
        self.values = [list(r) for r in values]
        self._cache: dict = {}

    @property
    def calc(self):
        return self.module.calc

    def on_basis(self, i: int, n: int, J: int) -> TensorForm:
        """sigma(g_i (x) e_J) for e_J in the degree-n basis."""
        if n == 0:
            return self.module.gen(i)
        if n == 1:
            return self.values[i][J]
        key = (i, n, J)
        hit = self._cache.get(key)
        if hit is None:
            b, rest = self.calc.split_basis(n, J)
            hit = self.wedge_apply(self.values[i][b], rest)
            self._cache[key] = hit
        return hit

    def apply(self, i: int, w: Form) -> TensorForm:
        """sigma(g_i (x) w) for a form w of any degree."""
        m = self.module
        out = m.zero(w.deg)
        for J, c in w.c.items():
            out = out + self.on_basis(i, w.deg, J).left(m.twist(i, c))
        return TensorForm(m, w.deg, out.comps)

    def wedge_apply(self, x: TensorForm, w: Form) -> TensorForm:
        """(id ^ sigma)(x (x) w) = sum_k x_k ^ sigma(g_k (x) w)."""
        m = self.module
        out = m.zero(x.deg + w.deg)
        for k, xk in x.comps.items():
            out = out + self.apply(k, w).wedge_left(xk)
        return TensorForm(m, out.deg, out.comps)

    def coeffs(self):
        for r in self.values:
            for v in r:
                yield from v.coeffs()

    def render(self) -> str:
        calc = self.calc
        parts = []
        for i, r in enumerate(self.values):
            for b, v in enumerate(r):
                parts.append(f"sigma({self.module.label(i)} (x) {calc.basis_label(1, b)}) = {v.render()}")
        return "\n".join(parts)


@dataclass
class NotBimodule:
    witness: str
    residual: TensorForm


def _sigma_candidate(conn: LeftConnection) -> SigmaMap:
    E = conn.module
    calc = E.calc
    vals = []
    for i in range(E.ngens()):
        row = []
        for b in range(calc.dim(1)):
            acc = E.zero(1)
            for a, f in calc.one_form_presentation(b):
                # sigma(g_i (x) a df) = twist_i(a) [nabla(g_i f) - nabla(g_i) f]
                t = conn(E.gen(i, E.twist(i, f))) - conn.values[i].right(f)
                if t:
                    acc = acc + t.left(E.twist(i, a))
            row.append(TensorForm(E, 1, acc.comps))
        vals.append(row)
    return SigmaMap(E, vals)


def sigma_residuals(conn: LeftConnection, sigma: SigmaMap, probes=None):
    """Yield (description, residual) for the bimodule-connection identities."""
    E = conn.module
    calc = E.calc
    probes = calc.probes() if probes is None else probes
    for i in range(E.ngens()):
        for pi, a in enumerate(probes):
            lhs = conn(E.gen(i, E.twist(i, a)))
            rhs = sigma.apply(i, calc.d_alg(a)) + conn.values[i].right(a)
            yield f"nabla({E.label(i)}.p{pi}) - sigma - nabla({E.label(i)}).p{pi}", lhs - rhs
            for b in range(calc.dim(1)):
                s = sigma.values[i][b]
                r = s.left(E.twist(i, calc.twist(1, b, a))) - s.right(a)
                yield f"sigma({E.label(i)} (x) {calc.basis_label(1, b)}.p{pi}) - sigma(..).p{pi}", r


def derive_sigma(conn: LeftConnection, probes=None) -> SigmaMap | NotBimodule:
    sigma = _sigma_candidate(conn)
    for desc, r in sigma_residuals(conn, sigma, probes):
        if r:
            return NotBimodule(desc, r)
    conn.sigma = sigma
    return sigma


# ---------------------------------------------------------------------------
# tensor products
# ---------------------------------------------------------------------------

def sigma_push(sigma: SigmaMap, i: int, x: TensorForm, target: TensorModule) -> TensorForm:
    """(sigma_E (x) id)(g_i (x) x) for x in Omega^n (x) F, landing in Omega^n (x) E (x) F."""
    E = sigma.module
    if target.factors[0] != E or len(target.factors) != 2 or target.factors[1] != x.module:
        raise TypeError("target must be E (x) F")
    out: dict = {}
    for l, eta in x.comps.items():
        s = sigma.apply(i, eta)
        for k, w in s.comps.items():
            j = target.position((k, l))
            out[j] = out[j] + w if j in out else w
    return TensorForm(target, x.deg, out)


def lift_right(x: TensorForm, l: int, target: TensorModule) -> TensorForm:
    """x (x) h_l for x over E."""
    return TensorForm(target, x.deg, {target.position((k, l)): w for k, w in x.comps.items()})


def tensor_connection(conn_e: LeftConnection, conn_f: LeftConnection) -> LeftConnection:
    """nabla_E (x) id + (sigma_E (x) id)(id (x) nabla_F); also sigma_{E(x)F} if sigma_F is known."""
    if conn_e.sigma is None:
        raise ValueError("the left factor needs a braiding sigma")
    E, F = conn_e.module, conn_f.module
    T = TensorModule([E, F])
    vals = []
    for (i, l) in T.index:
        v = lift_right(conn_e.values[i], l, T) + sigma_push(conn_e.sigma, i, conn_f.values[l], T)
        vals.append(v)
    out = LeftConnection(T, vals)
    if conn_f.sigma is not None:
        calc = T.calc
        svals = []
        for (i, l) in T.index:
            svals.append([sigma_push(conn_e.sigma, i, conn_f.sigma.values[l][b], T) for b in range(calc.dim(1))])
        out.sigma = SigmaMap(T, svals)
    return out


# ---------------------------------------------------------------------------
# extendability
# ---------------------------------------------------------------------------

def extendability_residuals(sigma: SigmaMap):
    """(^ (x) id)(id (x) sigma)(sigma (x) id) on g_i (x) kappa for kappa in ker ^."""
    E = sigma.module
    calc = E.calc
    for ki, kappa in enumerate(calc.wedge_kernel()):
        for i in range(E.ngens()):
            acc = E.zero(2)
            for (b, c), coeff in kappa.items():
                first = sigma.values[i][b].left(E.twist(i, coeff))
                acc = acc + sigma.wedge_apply(first, calc.basis_form(1, c))
            yield f"{E.label(i)} (x) kernel[{ki}]", TensorForm(E, 2, acc.comps)


def extension_residuals(sigma: SigmaMap, max_degree: int | None = None):
    """sigma(g (x) e_I ^ e_J) - (id ^ sigma)(sigma(g (x) e_I) (x) e_J) on basis triples."""
    E = sigma.module
    calc = E.calc
    top = calc.top_degree if max_degree is None else max_degree
    for n in range(1, top + 1):
        for m in range(1, top + 1 - n):
            for I in range(calc.dim(n)):
                for J in range(calc.dim(m)):
                    w = calc.basis_form(n, I).wedge(calc.basis_form(m, J))
                    for i in range(E.ngens()):
                        lhs = sigma.apply(i, w)
                        rhs = sigma.wedge_apply(sigma.on_basis(i, n, I), calc.basis_form(m, J))
                        yield f"{E.label(i)},{n}:{I},{m}:{J}", lhs - rhs


def curvature_right_module_residuals(conn: LeftConnection, probes=None) -> list[TensorForm]:
    return conn.curvature().right_module_residuals(probes)


def nabla_sigma_residuals(conn: LeftConnection, n: int):
    """nabla^[n] sigma - (id ^ sigma)(nabla (x) id) - sigma(id (x) d) on g_i (x) e_J."""
    sigma = conn.sigma
    E = conn.module
    calc = E.calc
    for i in range(E.ngens()):
        for J in range(calc.dim(n)):
            eJ = calc.basis_form(n, J)
            lhs = conn.apply_n(sigma.on_basis(i, n, J))
            rhs = sigma.wedge_apply(conn.values[i], eJ) + sigma.apply(i, eJ.d())
            yield f"{E.label(i)} (x) {calc.basis_label(n, J)}", lhs - rhs


def curvature_sigma_residuals(conn: LeftConnection, n: int):
    """(id ^ R) sigma - (id ^ sigma)(R (x) id) on g_i (x) e_J."""
    sigma = conn.sigma
    R = conn.curvature()
    E = conn.module
    calc = E.calc
    for i in range(E.ngens()):
        for J in range(calc.dim(n)):
            eJ = calc.basis_form(n, J)
            yield f"{E.label(i)} (x) {calc.basis_label(n, J)}", R(sigma.on_basis(i, n, J)) - sigma.wedge_apply(R.values[i], eJ)


# ---------------------------------------------------------------------------
# Bianchi identities
# ---------------------------------------------------------------------------

@dataclass
class BianchiResult:
    first: list
    second: list
    first_vacuous: bool
    second_vacuous: bool


def bianchi_residuals(conn: LeftConnection) -> BianchiResult:
    calc = conn.calc
    R = conn.curvature()
    vac3 = not calc.has_degree(3)
    first = []
    if isinstance(conn.module, FormModule) and conn.module.n == 1:
        T = torsion(conn)
        for b in range(calc.dim(1)):
            lhs = wedge_out(R.values[b])
            rhs = T.values[b].comps.get(0, Form(calc, 2, {})).d() - T(conn.values[b]).comps.get(0, Form(calc, 3, {}))
            first.append(lhs - rhs)
    second = morphism_derivative(R, conn, conn).values
    return BianchiResult(first, list(second), vac3, vac3)


# ---------------------------------------------------------------------------
# metrics
# ---------------------------------------------------------------------------

class Metric:
    """g in Omega^1 (x) Omega^1 with an inverse bimodule pairing (e_k, e_c)."""

    def __init__(self, calc, g_coeffs: dict, pairing: dict):
        self.calc = calc
        self.E = FormModule(calc, 1)
        self.T = TensorModule([self.E, self.E])
        self.g = TensorForm(self.T, 0, {self.T.position(bc): calc.func(a) for bc, a in g_coeffs.items()})
        self.pairing = {kc: a for kc, a in pairing.items() if not a.is_zero()}

    def coeff(self, b: int, c: int):
        f = self.g.comps.get(self.T.position((b, c)))
        return f.c.get(0, self.calc.zero()) if f is not None else self.calc.zero()

    def pair_value(self, k: int, c: int):
        return self.pairing.get((k, c), self.calc.zero())

    def as_one_form_tensor(self) -> TensorForm:
        """g as sum_c w_c (x) e_c with w_c in Omega^1."""
        calc = self.calc
        out: dict = {}
        for j, f in self.g.comps.items():
            b, c = self.T.index[j]
            w = calc.basis_form(1, b, f.c[0])
            out[c] = out[c] + w if c in out else w
        return TensorForm(self.E, 1, out)

    def morphism(self) -> GradedMorphism:
        """g as a degree-0 morphism A -> Omega^1 (x) Omega^1."""
        return GradedMorphism(AlgebraModule(self.calc), self.T, 0, [self.g])

    def contract(self, x: TensorForm) -> Form:
        """(id (x) ( , )) on Omega^n (x) Omega^1 (x) Omega^1."""
        if x.module != self.T:
            raise TypeError("expected a tensor form over Omega^1 (x) Omega^1")
        out = Form(self.calc, x.deg, {})
        for j, w in x.comps.items():
            k, c = self.T.index[j]
            p = self.pair_value(k, c)
            if not p.is_zero():
                out = out + w.right(p)
        return out

    def dimension(self):
        """( , )(g) as an algebra element."""
        f = self.contract(self.g)
        return f.c.get(0, self.calc.zero())

    def inverse_residuals(self):
        """((,) (x) id)(id (x) g) - id and (id (x) (,))(g (x) id) - id on generators."""
        calc, E = self.calc, self.E
        n = calc.dim(1)
        zero = calc.zero()
        for k in range(n):
            for c in range(n):
                s = zero
                for b in range(n):
                    s = s + E.twist(k, self.coeff(b, c)) * self.pair_value(k, b)
                target = calc.one() if k == c else zero
                yield f"left {k},{c}", s - target
        for b in range(n):
            for k in range(n):
                s = zero
                for c in range(n):
                    s = s + self.coeff(b, c) * E.twist(b, self.pair_value(c, k))
                target = calc.one() if b == k else zero
                yield f"right {b},{k}", s - target


def metric_compat_residual(conn: LeftConnection, metric: Metric) -> TensorForm:
    """nabla_{Omega^1 (x) Omega^1} g."""
    tc = tensor_connection(conn, conn)
    return tc.apply_n(metric.g)


def riemann_antisymmetry_residual(conn: LeftConnection, metric: Metric) -> TensorForm:
    """(R (x) id + (sigma (x) id)(id (x) R)) g."""
    R = conn.curvature()
    T = metric.T
    out = T.zero(2)
    for j, f in metric.g.comps.items():
        b, c = T.index[j]
        a = f.c[0]
        term = lift_right(R.values[b], c, T) + sigma_push(conn.sigma, b, R.values[c], T)
        out = out + term.left(a)
    return out


def curvature_power(conn: LeftConnection, n: int) -> GradedMorphism:
    m = conn.module
    if n == 0:
        return GradedMorphism.identity(m)
    R = conn.curvature()
    out = R
    for _ in range(n - 1):
        out = R.compose(out)
    return out


def metric_trace(conn: LeftConnection, metric: Metric, n: int) -> Form:
    """(id (x) ( , ))(R^n (x) id) g."""
    Rn = curvature_power(conn, n)
    T = metric.T
    out = T.zero(2 * n)
    for j, f in metric.g.comps.items():
        b, c = T.index[j]
        out = out + lift_right(Rn.values[b], c, T).left(f.c[0])
    return metric.contract(out)


# ---------------------------------------------------------------------------
# the external tensor product of morphisms
# ---------------------------------------------------------------------------

def boxtimes(phi: GradedMorphism, psi: GradedMorphism, sigma_g: SigmaMap) -> GradedMorphism:
    """phi [x] psi = (id ^ sigma_G (x) id)(phi (x) psi) on E (x) F -> G (x) H."""
    if sigma_g.module != phi.target:
        raise TypeError("braiding must belong to the target of the left factor")
    S = TensorModule([phi.source, psi.source])
    T = TensorModule([phi.target, psi.target])
    vals = []
    for (i, j) in S.index:
        acc = T.zero(phi.degree + psi.degree)
        pj = psi.values[j]
        for k, w in phi.values[i].comps.items():
            acc = acc + sigma_push(sigma_g, k, pj, T).wedge_left(w)
        vals.append(TensorForm(T, acc.deg, acc.comps))
    return GradedMorphism(S, T, phi.degree + psi.degree, vals)


def sigma_intertwiner_residuals(psi: GradedMorphism, sigma_e: SigmaMap, sigma_f: SigmaMap):
    """(id ^ psi) sigma_E - (-1)^n (id ^ sigma_F)(psi (x) id) on g_i (x) e_b."""
    calc = psi.source.calc
    sign = -1 if psi.degree % 2 else 1
    for i in range(psi.source.ngens()):
        for b in range(calc.dim(1)):
            lhs = psi(sigma_e.values[i][b])
            rhs = sigma_f.wedge_apply(psi.values[i], calc.basis_form(1, b))
            yield f"{psi.source.label(i)} (x) {calc.basis_label(1, b)}", lhs - (rhs if sign == 1 else -rhs)


class CoeffBag:
    """Loose algebra coefficients keyed by index tuples (used for residuals off the tensor-form path)."""

    def __init__(self, calc, entries: dict):
        self.calc = calc
        self.entries = {k: v for k, v in entries.items() if not v.is_zero()}

    def is_zero(self) -> bool:
        return not self.entries

    def coeffs(self):
        for k in sorted(self.entries):
            yield from self.calc.alg_coeffs(self.entries[k])

    def render(self) -> str:
        return ", ".join(f"{k}: {self.calc.render_alg(v)}" for k, v in sorted(self.entries.items())) or "0"


def _double_sigma(sigma: SigmaMap, i: int, b: int, c: int) -> dict:
    """(id (x) sigma)(sigma (x) id)(g_i (x) e_b (x) e_c) keyed by (p, q, l) for e_p (x) e_q (x) g_l."""
    calc = sigma.calc
    out: dict = {}
    for k, s in sigma.values[i][b].comps.items():
        t = sigma.values[k][c]
        for p, f in s.c.items():
            for l, tl in t.comps.items():
                for q, cq in tl.c.items():
                    term = f * calc.twist(1, p, cq)
                    key = (p, q, l)
                    out[key] = out[key] + term if key in out else term
    return out


def mixed_braid_residuals(sigma: SigmaMap, braid):
    """(id(x)sigma)(sigma(x)id)(id(x)Psi) - (Psi(x)id)(id(x)sigma)(sigma(x)id) on g_i (x) e_b (x) e_c.

    ``braid(b, c)`` returns {(p, q): scalar} with Psi(e_b (x) e_c) = sum scalar e_p (x) e_q.
    """
    calc = sigma.calc
    n = calc.dim(1)
    for i in range(sigma.module.ngens()):
        for b in range(n):
            for c in range(n):
                acc: dict = {}
                for (p, q), s in braid(b, c).items():
                    for key, v in _double_sigma(sigma, i, p, q).items():
                        v = v.scale(calc.coerce_scalar(s))
                        acc[key] = acc[key] + v if key in acc else v
                for (p, q, l), v in _double_sigma(sigma, i, b, c).items():
                    for (p2, q2), s in braid(p, q).items():
                        key = (p2, q2, l)
                        v2 = -v.scale(calc.coerce_scalar(s))
                        acc[key] = acc[key] + v2 if key in acc else v2
                yield f"{sigma.module.label(i)} (x) {calc.basis_label(1, b)} (x) {calc.basis_label(1, c)}", CoeffBag(calc, acc)
