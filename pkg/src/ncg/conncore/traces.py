"""Dual bases, Grassmann and dual connections, cycle traces and Chern-type invariants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..exactalg import PolyRing, RatFunc
from .calculus import Form
from .connections import LeftConnection, curvature_power, morphism_derivative
from .modules import AlgebraModule, FormModule, Module, ProjectorModule, TensorForm
from .morphisms import GradedMorphism


class TraceError(ValueError):
    """Raised for traces over modules or functionals that do not qualify."""


def projector_of(m: Module) -> list[list]:
    """Matrix P_ij = ev(e^i (x) e_i') of the standard dual basis (identity for free modules)."""
    calc = m.calc
    if isinstance(m, ProjectorModule):
        return m.P
    if isinstance(m, (FormModule, AlgebraModule)):
        n = m.ngens()
        return [[calc.one() if i == j else calc.zero() for j in range(n)] for i in range(n)]
    raise TraceError(f"module {type(m).__name__} carries no dual-basis data")


@dataclass
class DualBasis:
    """c^j = sum_i B_ji e^i in E and c_j = sum_i e_i A_ij in the dual, with A B = 1."""

    B: list
    A: list

    @classmethod
    def standard(cls, m: Module) -> "DualBasis":
        n = m.ngens()
        calc = m.calc
        ident = [[calc.one() if i == j else calc.zero() for j in range(n)] for i in range(n)]
        return cls(ident, [list(r) for r in ident])

    @classmethod
    def perturbed(cls, m: Module, X: Sequence[Sequence], Y: Sequence[Sequence]) -> "DualBasis":
        """A = [1 | X], B = [[1 - X Y], [Y]] for X (n x p) and Y (p x n)."""
        calc = m.calc
        n = m.ngens()
        p = len(Y)
        one, zero = calc.one(), calc.zero()
        XY = [[_dot([X[i][k] for k in range(p)], [Y[k][j] for k in range(p)], zero) for j in range(n)] for i in range(n)]
        A = [[one if i == j else zero for j in range(n)] + list(X[i]) for i in range(n)]
        B = [[(one if i == j else zero) - XY[i][j] for j in range(n)] for i in range(n)] + [list(r) for r in Y]
        return cls(B, A)

    @classmethod
    def random(cls, m: Module, rng, extra: int = 1) -> "DualBasis":
        calc = m.calc
        n = m.ngens()
        X = [[calc.random_alg(rng) for _ in range(extra)] for _ in range(n)]
        Y = [[calc.random_alg(rng) for _ in range(n)] for _ in range(extra)]
        return cls.perturbed(m, X, Y)

    def check(self, m: Module) -> None:
        calc = m.calc
        n = m.ngens()
        if len(self.A) != n or any(len(r) != len(self.B) for r in self.A):
            raise TraceError("dual basis matrices have the wrong shape")
        for i in range(n):
            for j in range(n):
                s = _dot(self.A[i], [row[j] for row in self.B], calc.zero())
                if s != (calc.one() if i == j else calc.zero()):
                    raise TraceError("dual basis matrices do not satisfy A B = 1")


def _dot(xs, ys, zero):
    s = zero
    for x, y in zip(xs, ys):
        s = s + x * y
    return s


def _ev_matrix(theta: GradedMorphism) -> list[list[Form]]:
    """W[i][i'] = (id (x) e_i')(theta(e^i)) as forms."""
    m = theta.source
    P = projector_of(m)
    n = m.ngens()
    zero_form = Form(m.calc, theta.degree, {})
    W = []
    for i in range(n):
        row = []
        v = theta.values[i]
        for ip in range(n):
            acc = zero_form
            for k, w in v.comps.items():
                p = P[k][ip]
                if not p.is_zero():
                    acc = acc + w.right(p)
            row.append(acc)
        W.append(row)
    return W


def trace_form(theta: GradedMorphism, dual: DualBasis | None = None) -> Form:
    """(id (x) ev)(theta(c^j) (x) c_j) summed over the chosen dual basis."""
    m = theta.source
    if theta.target != m:
        raise TraceError("trace needs an endomorphism")
    dual = DualBasis.standard(m) if dual is None else dual
    dual.check(m)
    W = _ev_matrix(theta)
    n = m.ngens()
    out = Form(m.calc, theta.degree, {})
    for j in range(len(dual.B)):
        for i in range(n):
            b = dual.B[j][i]
            if b.is_zero():
                continue
            for ip in range(n):
                a = dual.A[ip][j]
                if a.is_zero() or not W[i][ip]:
                    continue
                out = out + W[i][ip].left(b).right(a)
    return out


_VERIFIED: dict = {}


def _require_cycle(phi):
    from ..groupcalc import cycle_verify

    key = id(phi)
    hit = _VERIFIED.get(key)
    if hit is None or hit[0] is not phi:
        res = cycle_verify(phi)
        _VERIFIED[key] = (phi, res)
        hit = _VERIFIED[key]
    if not hit[1].ok:
        raise TraceError(f"functional is not a cycle: {hit[1].witness}")


def cycle_trace(theta: GradedMorphism, phi, dual: DualBasis | None = None) -> RatFunc:
    """Tr_phi(theta) = phi((id (x) ev)(theta e^i (x) e_i))."""
    if theta.degree != phi.degree:
        raise TraceError("cycle degree differs from the morphism degree")
    _require_cycle(phi)
    return phi(trace_form(theta, dual))


def trace_derivative(theta: GradedMorphism, conn: LeftConnection, phi) -> RatFunc:
    """Tr_phi of nabla nabla(theta); vanishes for any cycle of degree |theta| + 1."""
    return cycle_trace(morphism_derivative(theta, conn, conn), phi)


def chern_invariant(conn: LeftConnection, phi, n: int, dual: DualBasis | None = None) -> RatFunc:
    """Tr_phi(R^n) for a 2n-cycle phi."""
    if phi.degree != 2 * n:
        raise TraceError("chern invariant needs a 2n-cycle")
    return cycle_trace(curvature_power(conn, n), phi, dual)


@dataclass
class InvarianceReport:
    values: list
    equal: bool
    path_value: RatFunc | None = None
    path_constant: bool | None = None


def chern_invariance(conns: Sequence[LeftConnection], phi, n: int, path: bool = True, tname: str = "t") -> InvarianceReport:
    """Compare Tr_phi(R^n) across connections; optionally along the line from the first to the second."""
    vals = [chern_invariant(c, phi, n) for c in conns]
    rep = InvarianceReport(vals, all(v == vals[0] for v in vals))
    if path and len(conns) >= 2:
        line, _ = straight_line(conns[0], conns[1], tname)
        lphi = _lift_cycle(phi, line.calc)
        v = chern_invariant(line, lphi, n)
        i = v.ring.index(tname)
        rep.path_value = v
        rep.path_constant = v.num.degree_in(i) <= 0 and v.den.degree_in(i) <= 0
    return rep


def straight_line(c0: LeftConnection, c1: LeftConnection, tname: str = "t"):
    """nabla^t = nabla_0 + t (nabla_1 - nabla_0) over the parameter ring extended by t."""
    m = c0.module
    if c1.module != m:
        raise TypeError("connections on different modules")
    calc = m.calc
    ring = calc.ring
    if tname in ring.names:
        raise ValueError(f"parameter {tname} already in use")
    ring2 = PolyRing(ring.names + (tname,), ring.field)
    ident = {n: RatFunc.var(ring2, n) for n in ring.names}
    calc2 = calc.specialize(ident, ring2)
    m2 = _respecialize_module(m, calc2, ident)
    v0 = [v.substitute(ident, m2) for v in c0.values]
    v1 = [v.substitute(ident, m2) for v in c1.values]
    t = RatFunc.var(ring2, tname)
    vals = [a + (b - a).scale(t) for a, b in zip(v0, v1)]
    return LeftConnection(m2, vals), calc2


def _respecialize_module(m: Module, calc2, values):
    if isinstance(m, FormModule):
        return FormModule(calc2, m.n)
    if isinstance(m, AlgebraModule):
        return AlgebraModule(calc2)
    if isinstance(m, ProjectorModule):
        P = [[m.calc.substitute_alg(p, values, calc2) for p in row] for row in m.P]
        return ProjectorModule(calc2, P, m.name)
    raise TypeError("cannot move this module to another coefficient ring")


def _lift_cycle(phi, calc2):
    from ..groupcalc import Cycle

    return Cycle(calc2, phi.degree, dict(phi.weights), phi.name)


# ---------------------------------------------------------------------------
# Grassmann and dual connections
# ---------------------------------------------------------------------------

def grassmann_connection(m: ProjectorModule) -> LeftConnection:
    """nabla e = sum_i d(e_i(e)) (x) e^i, so nabla e^j = sum_i dP_ji (x) e^i."""
    calc = m.calc
    vals = []
    for j, row in enumerate(m.P):
        comps = {}
        for i, p in enumerate(row):
            dp = calc.d_alg(p)
            if dp:
                comps[i] = dp
        vals.append(TensorForm(m, 1, comps))
    return LeftConnection(m, vals)


def grassmann_curvature_formula(m: ProjectorModule) -> GradedMorphism:
    """R e^i = - sum dP_ij ^ dP_jk . P_km (x) e^m."""
    calc = m.calc
    P = m.P
    n = len(P)
    dP = [[calc.d_alg(p) for p in row] for row in P]
    vals = []
    for i in range(n):
        comps: dict = {}
        for j in range(n):
            for k in range(n):
                w = dP[i][j].wedge(dP[j][k])
                if not w:
                    continue
                for mm in range(n):
                    if P[k][mm].is_zero():
                        continue
                    t = -w.right(P[k][mm])
                    comps[mm] = comps[mm] + t if mm in comps else t
        vals.append(TensorForm(m, 2, comps))
    return GradedMorphism(m, m, 2, vals)


class DualConnection:
    """Right connection on the dual: nabla~(e_i) = sum_j e_j (x) eta_ji."""

    def __init__(self, conn: LeftConnection):
        m = conn.module
        if not m.calc.commutative:
            raise TraceError("dual connections are implemented over commutative algebras only")
        self.conn = conn
        self.module = m
        self.P = projector_of(m)
        calc = m.calc
        n = m.ngens()
        self.eta = []
        for j in range(n):
            row = []
            for i in range(n):
                w = calc.d_alg(self.P[j][i])
                for k, f in conn.values[j].comps.items():
                    p = self.P[k][i]
                    if not p.is_zero():
                        w = w - f.right(p)
                row.append(w)
            self.eta.append(row)

    def apply(self, b: Sequence) -> list[list[Form]]:
        """nabla~(sum_j e_j b_j) as a matrix entry list [l] -> form, meaning sum_l e_l (x) form."""
        calc = self.module.calc
        n = len(self.P)
        out = [Form(calc, 1, {}) for _ in range(n)]
        for j, bj in enumerate(b):
            if bj.is_zero():
                continue
            for l in range(n):
                if self.eta[l][j]:
                    out[l] = out[l] + self.eta[l][j].right(bj)
            out[j] = out[j] + calc.d_alg(bj)
        return out


def dual_connection(conn: LeftConnection) -> DualConnection:
    return DualConnection(conn)


def oscat_residual(conn: LeftConnection, dual: DualConnection | None = None) -> list[list[Form]]:
    """Canonical matrix of (nabla~ (x) id + id (x) nabla)(e_i (x) e^i) in E^flat (x) Omega^1 (x) E."""
    dual = dual_connection(conn) if dual is None else dual
    P = dual.P
    n = len(P)
    calc = conn.calc
    M = [[dual.eta[j][i] for i in range(n)] for j in range(n)]
    for i in range(n):
        for k, w in conn.values[i].comps.items():
            M[i][k] = M[i][k] + w
    # e_q = e_m P_mq on the left and e^k = P_kl e^l on the right
    zero = Form(calc, 1, {})
    out = []
    for m_ in range(n):
        row = []
        for l in range(n):
            acc = zero
            for q in range(n):
                if P[m_][q].is_zero():
                    continue
                for k in range(n):
                    if P[k][l].is_zero() or not M[q][k]:
                        continue
                    acc = acc + M[q][k].left(P[m_][q]).right(P[k][l])
            row.append(acc)
        out.append(row)
    return out


def evaluation_residual(dual: DualConnection, a: Sequence, b: Sequence) -> Form:
    """d ev(x (x) alpha) - (id (x) ev)(nabla x (x) alpha) - (ev (x) id)(x (x) nabla~ alpha).

    x = sum_i a_i e^i and alpha = sum_j e_j b_j.
    """
    calc = dual.module.calc
    P = dual.P
    conn = dual.conn
    n = len(P)
    zero = calc.zero()
    ev = zero
    for i in range(n):
        for j in range(n):
            ev = ev + a[i] * P[i][j] * b[j]
    lhs = calc.d_alg(ev)
    first = Form(calc, 1, {})
    for i in range(n):
        da = calc.d_alg(a[i])
        for j in range(n):
            pb = P[i][j] * b[j]
            if da and not pb.is_zero():
                first = first + da.right(pb)
        for k, w in conn.values[i].comps.items():
            for j in range(n):
                pb = P[k][j] * b[j]
                if not pb.is_zero() and not a[i].is_zero():
                    first = first + w.left(a[i]).right(pb)
    nab = dual.apply(b)
    second = Form(calc, 1, {})
    for i in range(n):
        for l in range(n):
            c = a[i] * P[i][l]
            if not c.is_zero() and nab[l]:
                second = second + nab[l].left(c)
    return lhs - first - second
