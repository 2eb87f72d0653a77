"""General-theory property suites, run on S3 where everything is finite dimensional."""

from __future__ import annotations

from fractions import Fraction

from ...conncore.category import (
    boxtimes_composition_residual,
    boxtimes_leibniz_residual,
    composition_leibniz_residual,
    morphism_space,
    random_combination,
    random_left_morphism,
    tensor_curvature_boxtimes_residual,
    tensor_curvature_residual,
)
from ...conncore.connections import (
    algebra_connection,
    boxtimes,
    curvature_power,
    dd_commutator,
    extendability_residuals,
    morphism_derivative,
)
from ...conncore.modules import ProjectorModule
from ...conncore.morphisms import GradedMorphism
from ...conncore.traces import (
    DualBasis,
    TraceError,
    chern_invariance,
    chern_invariant,
    cycle_trace,
    dual_connection,
    evaluation_residual,
    grassmann_connection,
    grassmann_curvature_formula,
    oscat_residual,
    straight_line,
    trace_derivative,
    trace_form,
)
from ...exactalg import PolyRing
from ...groupcalc import Cycle, cycle_verify, evaluation_cycle, sum_over_group_cycle
from .. import checks as ck
from ..models import S3Model


def _qq_model():
    return S3Model(PolyRing(()))


def _projector(calc, entries):
    """entries[x] is the matrix at group element x."""
    n = len(entries[0])
    q = [[calc.function([Fraction(str(entries[x][i][j])) for x in range(len(entries))]) for j in range(n)]
         for i in range(n)]
    return q


def _zero_forms(rows):
    return ck.all_zero((f"row {i} col {j}", w) for i, row in enumerate(rows) for j, w in enumerate(row))


# ---------------------------------------------------------------------------
# theory.chern_invariance
# ---------------------------------------------------------------------------

def run_chern_invariance(cfg, rec, rng):
    ex, an = cfg["expected"], cfg["anchors"]
    model = _qq_model()
    calc = model.calc
    phi = sum_over_group_cycle(calc)
    bad = evaluation_cycle(calc)

    rec.run("sum over the group is a 4-cycle", an["cycle"], lambda: ("pass", "0") if cycle_verify(phi).ok else ("fail", cycle_verify(phi).witness))

    def not_cycle():
        c = cycle_verify(bad)
        return ("pass", f"rejected as expected: {c.witness}") if not c.ok else ("fail", "evaluation functional accepted as a cycle")
    rec.run("negative control: evaluation at the identity is not a cycle", an["cycle"], not_cycle)

    mods = {}
    for name, entries in ex["projectors"].items():
        mods[name] = ProjectorModule(calc, _projector(calc, entries), name)

    for name, m in mods.items():
        g = grassmann_connection(m)
        rec.run(f"{name}: Grassmann connection satisfies the Leibniz rule", an["grassmann"],
                lambda g=g: ck.all_zero(g.leibniz_residuals()))
        rec.run(f"{name}: Grassmann curvature equals the projector formula", an["grassmann"],
                lambda g=g, m=m: ck.zero(g.curvature() - grassmann_curvature_formula(m)))
        rec.run(f"{name}: d of the matrix product", an["oscat"], lambda g=g: _zero_forms(oscat_residual(g)))

        def ev_compat(g=g, m=m):
            dual = dual_connection(g)
            for _ in range(int(cfg.get("random_trials", 3))):
                a = [calc.random_alg(rng) for _ in range(m.ngens())]
                b = [calc.random_alg(rng) for _ in range(m.ngens())]
                r = evaluation_residual(dual, a, b)
                if not r.is_zero():
                    return "fail", r.render()
            return "pass", "0"
        rec.run(f"{name}: dual connection is compatible with evaluation", an["dual"], ev_compat)

        theta = random_left_morphism(m, m, phi.degree, rng)

        def dual_indep(theta=theta, m=m):
            base = cycle_trace(theta, phi)
            for k in range(int(cfg.get("dual_bases", 3))):
                other = cycle_trace(theta, phi, DualBasis.random(m, rng, k + 1))
                if other != base:
                    return "fail", f"canonical dual basis {base}, random dual basis {other}"
            return "pass", f"trace {base} for every dual basis"
        rec.run(f"{name}: cycle trace is independent of the dual basis", an["dualbasis"], dual_indep)

        def dd_trace(g=g, m=m):
            th = random_left_morphism(m, m, phi.degree - 1, rng)
            return ck.zero(trace_derivative(th, g, phi))
        rec.run(f"{name}: trace of nabla nabla theta vanishes", an["tracederiv"], dd_trace)

        pert = g + random_left_morphism(m, m, 1, rng)

        def invariance(g=g, pert=pert):
            rep = chern_invariance([g, pert], phi, 2)
            if not rep.equal:
                return "fail", f"values differ: {rep.values}"
            if not rep.path_constant:
                return "fail", f"not constant along the line: {rep.path_value}"
            return "pass", f"value {rep.values[0]} at both ends and along the line"
        rec.run(f"{name}: Tr R^2 agrees for two connections", an["chern"], invariance)

        def pointwise(g=g):
            w = trace_form(curvature_power(g, 2))
            return ("pass", f"trace form {w.render()}") if not w.is_zero() else ("vacuous", "trace form of R^2 vanishes identically")
        rec.run(f"{name}: trace form of R^2 is nonzero before integration", an["chern"], pointwise)

        def rank(g=g, pert=pert, m=m):
            out = []
            for x in range(len(calc.group)):
                pt = Cycle(calc, 0, {0: tuple(Fraction(int(y == x)) for y in range(len(calc.group)))}, f"at {x}")
                a, b = chern_invariant(g, pt, 0), chern_invariant(pert, pt, 0)
                if a != b:
                    return "fail", f"degree 0 at {x}: {a} vs {b}"
                out.append(str(a))
            return "pass", "pointwise ranks " + ", ".join(out)
        rec.run(f"{name}: degree-0 invariant (pointwise rank)", an["chern"], rank)

    # the free module Omega^1 with the symbolic five-parameter family
    sym = S3Model()
    conn = sym.connection(with_sigma=False)
    sphi = sum_over_group_cycle(sym.calc)
    rec.run("Omega^1, five-parameter family: int Tr R^2", an["chern"], lambda: ck.zero(chern_invariant(conn, sphi, 2)))

    def trivial_vs_family():
        zero = sym.connection({"a": 1, "b": 0, "c": 0, "d": 1, "e": 0}, with_sigma=False)
        a, b = chern_invariant(zero, sphi, 2), chern_invariant(conn, sphi, 2)
        return ck.equal(a, b)
    rec.run("Omega^1: family agrees with the zero-Christoffel connection", an["chern"], trivial_vs_family)

    def dual_indep_family():
        R2 = curvature_power(conn, 2)
        base = cycle_trace(R2, sphi)
        other = cycle_trace(R2, sphi, DualBasis.random(conn.module, rng))
        return ck.equal(other, base)
    rec.run("Omega^1: int Tr R^2 independent of the dual basis", an["dualbasis"], dual_indep_family)

    def trace_nonzero():
        m = mods[next(iter(mods))]
        for _ in range(8):
            th = random_left_morphism(m, m, phi.degree, rng)
            v = cycle_trace(th, phi)
            if v:
                return "pass", f"Tr theta = {v}"
        return "fail", "every sampled trace vanished"
    rec.run("negative control: traces of random 4-morphisms are not all zero", an["tracederiv"], trace_nonzero)

    def rejects():
        m = mods[next(iter(mods))]
        th = random_left_morphism(m, m, bad.degree, rng)
        try:
            cycle_trace(th, bad)
        except TraceError as exc:
            return "pass", f"refused: {exc}"
        return "fail", "trace against a non-cycle was accepted"
    rec.run("negative control: trace refuses a non-cycle", an["cycle"], rejects)

    def path_varies():
        m = mods[next(iter(mods))]
        g = grassmann_connection(m)
        pert = g + random_left_morphism(m, m, 1, rng)
        line, _ = straight_line(g, pert)
        v = evaluation_cycle(line.calc)(trace_form(curvature_power(line, 2)))
        t = v.ring.index("t")
        if v.num.degree_in(t) > 0 or v.den.degree_in(t) > 0:
            return "pass", f"evaluation functional along the line: {v}"
        return "fail", f"constant even without the cycle property: {v}"
    rec.run("negative control: a non-cycle sees the change of connection", an["chern"], path_varies)


# ---------------------------------------------------------------------------
# theory.dg_identities
# ---------------------------------------------------------------------------

def _objects(model, points):
    objs = {"A": algebra_connection(model.calc)}
    for name, vals in points.items():
        objs[name] = model.connection(vals)
    return objs


def run_dg_identities(cfg, rec, rng):
    ex, an = cfg["expected"], cfg["anchors"]
    model = _qq_model()
    objs = _objects(model, ex["objects"])
    curved = model.connection(ex["curved"])
    A = objs["A"]

    for name, c in objs.items():
        if name == "A":
            continue
        rec.run(f"object {name} is extendable", an["objects"], lambda c=c: ck.all_zero(extendability_residuals(c.sigma)))
        rec.run(f"object {name} is flat", an["objects"], lambda c=c: ck.zero(c.curvature()))
    rec.run("curved point is curved", an["objects"], lambda: ck.nonzero(curved.curvature(), "curvature"))

    triv = objs[ex["unit_object"]]
    F, H = objs[ex["pair"][0]], objs[ex["pair"][1]]
    dims = {}

    def space(src, tgt, deg):
        key = (id(src), id(tgt), deg)
        if key not in dims:
            dims[key] = morphism_space(src.module, tgt.module, deg, src.sigma, tgt.sigma)
        return dims[key]

    def sizes():
        pairs = [(ex["unit_object"], "A", 3), ("A", ex["unit_object"], 3), (ex["pair"][0], ex["pair"][1], 2)]
        got = {f"{s}->{t} deg {d}": len(space(objs[s], objs[t], d)) for s, t, d in pairs}
        if any(n == 0 for n in got.values()):
            return "fail", f"empty morphism space: {got}"
        return "pass", str(got)
    rec.run("morphism spaces used below are nonzero", an["morphisms"], sizes)

    def bases_are_morphisms():
        basis = space(triv, A, 3) + space(F, H, 2)
        return ck.all_zero((f"basis {i}", r) for i, b in enumerate(basis) for r in b.right_module_residuals())
    rec.run("morphism space bases are right-module maps", an["morphisms"], bases_are_morphisms)

    # external product: two configurations separating the candidate signs
    def law(case, sign=None):
        if case == 1:
            phi = random_combination(space(triv, A, 3), rng)
            psi = GradedMorphism.identity(triv.module)
            tau = random_left_morphism(F.module, F.module, 1, rng)
            kappa = random_left_morphism(F.module, F.module, 0, rng)
            mid, top = triv.sigma, A.sigma
        else:
            psi = random_combination(space(A, triv, 3), rng)
            phi = GradedMorphism.identity(triv.module)
            tau = random_left_morphism(F.module, F.module, 0, rng)
            kappa = random_left_morphism(F.module, F.module, 1, rng)
            mid, top = triv.sigma, triv.sigma
        if sign == "displayed":
            sign = -1 if (psi.degree * kappa.degree) % 2 else 1
        res = boxtimes_composition_residual(phi, kappa, psi, tau, mid, top, sign)
        if boxtimes(phi, kappa, top).compose(boxtimes(psi, tau, mid)).is_zero():
            return "vacuous", "both sides vanish"
        return ck.zero(res)

    for case in (1, 2):
        rec.run(f"external product composition law, sign (-1)^(|phi||tau|), case {case}", an["boxtimes"],
                lambda case=case: law(case))
        rec.run(f"external product composition law, sign (-1)^(|psi||kappa|), case {case}", an["boxtimes"],
                lambda case=case: law(case, "displayed"))

    def box_leibniz():
        phi = random_combination(space(triv, A, 3), rng)
        for deg in (0, 1):
            psi = random_left_morphism(F.module, H.module, deg, rng)
            r = boxtimes_leibniz_residual(phi, psi, triv, A, F, H)
            if not r.is_zero():
                return "fail", f"|psi| = {deg}: {r.render()}"
        phi2 = random_combination(space(F, H, 2), rng)
        psi = random_left_morphism(triv.module, A.module, 1, rng)
        return ck.zero(boxtimes_leibniz_residual(phi2, psi, F, H, triv, A))
    rec.run("external product Leibniz rule", an["boxtimes"], box_leibniz)

    def comp_leibniz():
        for d1, d2 in ((0, 1), (1, 1), (1, 2)):
            a = random_left_morphism(F.module, curved.module, d1, rng)
            b = random_left_morphism(curved.module, H.module, d2, rng)
            r = composition_leibniz_residual(b, a, F, curved, H)
            if not r.is_zero():
                return "fail", f"degrees ({d1}, {d2}): {r.render()}"
        return "pass", "0"
    rec.run("composition Leibniz rule", an["composition"], comp_leibniz)

    def dd_comm():
        for deg in (0, 1, 2):
            psi = random_left_morphism(F.module, curved.module, deg, rng)
            r = dd_commutator(psi, F, curved)
            if not r.is_zero():
                return "fail", f"degree {deg}: {r.render()}"
        psi = random_left_morphism(curved.module, curved.module, 1, rng)
        return ck.zero(dd_commutator(psi, curved, curved))
    rec.run("nabla nabla squared is the curvature commutator", an["ddcomm"], dd_comm)

    def dd_nontrivial():
        psi = random_left_morphism(curved.module, curved.module, 0, rng)
        dd = morphism_derivative(morphism_derivative(psi, curved, curved), curved, curved)
        return ck.nonzero(dd, "nabla nabla squared")
    rec.run("negative control: nabla nabla squared is nonzero at the curved point", an["ddcomm"], dd_nontrivial)

    for name in ex["tensor_left"]:
        c = objs[name]
        rec.run(f"tensor curvature formula, {name} (x) curved", an["tensorcurv"],
                lambda c=c: ck.zero(tensor_curvature_residual(c, curved)))
        rec.run(f"tensor curvature as external products, {name} (x) curved", an["tensorcurv"],
                lambda c=c: ck.zero(tensor_curvature_boxtimes_residual(c, curved)))
    rec.run("negative control: tensor curvature formula with a non-extendable left factor", an["tensorcurv"],
            lambda: ck.nonzero(tensor_curvature_residual(curved, objs[ex["negative_right"]]), "residual"))

