"""Scenarios on the bicross spacetime [r, t] = lam r with its 2D calculus."""

from __future__ import annotations

from ...conncore.connections import (
    cotorsion,
    curvature_right_module_residuals,
    extendability_residuals,
    extension_residuals,
    metric_compat_residual,
    metric_trace,
    nabla_sigma_residuals,
    sigma_residuals,
    torsion,
)
from ...conncore.equations import EquationSet
from ...conncore.modules import FormModule, TensorForm, TensorModule
from ...exactalg import RatFunc, parse_rf
from ...orecalc import PARAMS, curvature_coefficients, homogeneous_connection
from .. import checks as ck
from ..models import BicrossModel

DR, V, VOL = 0, 1, 0


def _rf(model, text):
    return parse_rf(str(text), model.ring)


def _family(model, fam):
    """(values, connection with sigma, metric) for a family entry of substitutions."""
    vals = model.values(fam.get("values", {}))
    conn = model.connection(fam.get("values", {}))
    return vals, conn, model.metric(conn)


def _at(model, vals, text):
    return _rf(model, text).substitute(vals, model.ring)


def _one_form(calc, dr, v):
    return {DR: calc.one().scale(dr), V: calc.one().scale(v)}


def _expected_sigma(calc, E, rows, vals, model):
    """sigma(g_i (x) e_b) from rows {i: {b: [[coef, left, right], ...]}} with left/right in {dr, v}."""
    idx = {"dr": DR, "v": V}
    out = {}
    rinv = calc.one()
    for i, per in rows.items():
        for b, terms in per.items():
            comps = {}
            for coef, left, right in terms:
                c = _at(model, vals, coef)
                w = calc.basis_form(1, idx[left], rinv.scale(c))
                k = idx[right]
                comps[k] = comps[k] + w if k in comps else w
            out[(idx[i], idx[b])] = TensorForm(E, 1, comps)
    return out


# ---------------------------------------------------------------------------
# bicross.extendability
# ---------------------------------------------------------------------------

def run_extendability(cfg, rec, rng):
    ex, an = cfg["expected"], cfg["anchors"]
    model = BicrossModel()
    calc, ring = model.calc, model.ring
    lam = calc.lam
    r, t = calc.r(), calc.t()

    rec.run("[r, t] = lam r", an["algebra"], lambda: ck.zero(r * t - t * r - r.scale(lam)))
    rec.run("[r, dt] = lam dr", an["algebra"], lambda: ck.zero(calc.dt().left(r) - calc.dt().right(r) - calc.dr().scale(lam)))
    rec.run("[t, dt] = lam dt", an["algebra"], lambda: ck.zero(calc.dt().left(t) - calc.dt().right(t) - calc.dt().scale(lam)))
    rec.run("[r, dr] = 0 = [t, dr]", an["algebra"],
            lambda: ck.all_zero((x, calc.dr().left(a) - calc.dr().right(a)) for x, a in (("r", r), ("t", t))))
    rec.run("v = r dt - t dr", an["algebra"], lambda: ck.zero(calc.dt().left(r) - calc.dr(t) - calc.v()))
    rec.run("dr and v are central", an["algebra"],
            lambda: ck.all_zero((f"{n} vs {calc.render_alg(a)}", w.left(a) - w.right(a))
                                for n, w in (("dr", calc.dr()), ("v", calc.v())) for a in calc.probes()))
    rec.run("dr^dr = 0 and dr^v + v^dr = 0", an["algebra"],
            lambda: ck.all_zero([("dr^dr", calc.dr().wedge(calc.dr())), ("dr^v+v^dr", calc.dr().wedge(calc.v()) + calc.v().wedge(calc.dr()))]))
    rec.run("v^v = lam Vol with Vol = v^dr", an["algebra"],
            lambda: ck.zero(calc.v().wedge(calc.v()) - calc.v().wedge(calc.dr()).scale(lam)))
    rec.run("dt anticommutes with dr", an["algebra"], lambda: ck.zero(calc.dt().wedge(calc.dr()) + calc.dr().wedge(calc.dt())))
    rec.run("dv from v = r dt - t dr", an["dv"],
            lambda: ck.zero(calc.v().d() - (calc.dr().wedge(calc.dt()) - calc.dt().wedge(calc.dr()))))
    rec.run("dv = -2 r^-1 Vol", an["dv"], lambda: ck.zero(calc.v().d() - calc.vol(calc.r(-1).scale(RatFunc.const(ring, -2)))))

    def dga():
        for _ in range(int(cfg.get("random_triples", 4))):
            x, y, z = (calc.random_alg(rng) for _ in range(3))
            if (x * y) * z != x * (y * z):
                return "fail", "associativity"
            if calc.d_alg(x * y) != calc.d_alg(x).right(y) + calc.d_alg(y).left(x):
                return "fail", f"Leibniz on {calc.render_alg(x)}, {calc.render_alg(y)}"
            if not calc.d_alg(x).d().is_zero():
                return "fail", f"d^2 on {calc.render_alg(x)}"
        return "pass", "0"
    rec.run("associativity, Leibniz and d^2 = 0 on random elements", an["algebra"], dga)

    conn = model.connection()
    calc = conn.calc
    E = conn.module
    sigma = conn.sigma
    rec.run("braiding exists (bimodule connection)", an["sigma"],
            lambda: ("pass", sigma.render()) if hasattr(sigma, "on_basis") else ("fail", str(sigma)))
    rec.run("braiding reproduces nabla(e.a) - (nabla e).a", an["sigma"], lambda: ck.all_zero(sigma_residuals(conn, sigma)))
    want = _expected_sigma(calc, E, ex["sigma"], model.values(), model)

    def sigma_printed():
        for (i, b), w in want.items():
            got = sigma.on_basis(i, 1, b)
            if got != w:
                return "fail", f"sigma({E.label(i)} (x) {calc.basis_label(1, b)}): computed {got.render()}; expected {w.render()}"
        return "pass", "0"
    rec.run("braiding formulas", an["sigma"], sigma_printed)

    T = torsion(conn)
    for gen, text in ex["torsion"].items():
        i = {"dr": DR, "v": V}[gen]
        rec.run(f"torsion of {gen}", an["torsion"],
                lambda i=i, text=text: ck.compare(T.values[i].component(0), calc.vol(calc.r(-1).scale(_rf(model, text)))))

    def shape():
        c = curvature_coefficients(conn)
        return "pass", "; ".join(f"c{k + 1} = {x}" for k, x in enumerate(c))
    rec.run("curvature has the c1..c4 shape", an["curvature"], shape)
    c = curvature_coefficients(conn)
    cs = EquationSet.from_values(ring, c)
    printed = EquationSet.parse(ring, ex["c_equations"])

    def c_match():
        hits = []
        for k, ck_ in enumerate(c):
            for j, p in enumerate(printed.polys):
                q = RatFunc.from_poly(p)
                if (ck_ - q).is_zero() or (ck_ + q).is_zero():
                    hits.append(f"c{k + 1}~#{j + 1}")
                    break
            else:
                return "fail", f"c{k + 1} = {ck_} matches none of the displayed expressions"
        return "pass", ", ".join(hits)
    rec.run("c1..c4 equal the displayed four expressions up to sign", an["curvature"], c_match)

    ext = EquationSet.from_residuals(ring, [x for _, x in extendability_residuals(sigma)])
    sat = ext.saturate(["lam"])
    rec.run("extendability conditions, lam saturated, equal {c1..c4}", an["extendable"], lambda: ck.same_conditions(sat, cs))
    rec.run("bianchi identities (no degree-3 forms)", an["curvature"],
            lambda: ("vacuous", "top degree is 2") if calc.top_degree < 3 else ("fail", "unexpected degree-3 forms"))

    for name, fam in ex["families"].items():
        vals, fc, _ = _family(model, fam)
        rec.run(f"family ({name}) is extendable", an["families"], lambda vals=vals: ck.vanishes(ext, vals, ring))
        rec.run(f"family ({name}) is flat", an["families"], lambda fc=fc: ck.zero(fc.curvature()))
        rec.run(f"family ({name}) degree-2 braiding well defined", an["families"], lambda fc=fc: ck.all_zero(extension_residuals(fc.sigma)))
        for n in (1, 2):
            rec.run(f"family ({name}) nabla-sigma compatibility n={n}", an["families"],
                    lambda fc=fc, n=n: ck.all_zero(nabla_sigma_residuals(fc, n)))
        rows = ex["sigma_vol"]
        for gen, terms in rows.items():
            i = {"dr": DR, "v": V}[gen]
            rec.run(f"family ({name}) braiding of {gen} (x) Vol", an["sigma_vol"],
                    lambda fc=fc, vals=vals, i=i, terms=terms: _sigma_vol(model, fc, vals, i, terms))
        if fam.get("note"):
            rec.run(f"family ({name}) genericity", an["families"], lambda fam=fam: ("pass", fam["note"]))

    def bimodule_claim():
        rm = EquationSet.from_residuals(ring, list(curvature_right_module_residuals(conn)) + list(T.right_module_residuals()))
        if rm.is_trivial():
            return "pass", "0"
        return "fail", "curvature and torsion are right-module maps only when " + "; ".join(rm.render())
    rec.run("torsion and curvature are bimodule maps for all parameters", an["bimodule"], bimodule_claim)

    neg = ex["negative_point"]
    nvals, nc, _ = _family(model, neg)
    rec.run("negative control: generic point is not extendable", an["extendable"], lambda: ck.fails_on(ext, nvals, ring))
    rec.run("negative control: generic point is curved", an["extendable"], lambda: ck.nonzero(nc.curvature(), "curvature"))


def _sigma_vol(model, conn, vals, i, terms):
    calc = conn.calc
    E = conn.module
    comps = {}
    for coef, target in terms:
        k = {"dr": DR, "v": V}[target]
        comps[k] = calc.vol(calc.one().scale(_at(model, vals, coef)))
    return ck.compare(conn.sigma.on_basis(i, 2, VOL), TensorForm(E, 2, comps))


# ---------------------------------------------------------------------------
# bicross.metric
# ---------------------------------------------------------------------------

def run_metric(cfg, rec, rng):
    ex, an = cfg["expected"], cfg["anchors"]
    model = BicrossModel()
    calc, ring = model.calc, model.ring
    conn = model.connection()
    calc = conn.calc
    g = model.metric(conn)

    rec.run("metric is central", an["metric"],
            lambda: ck.all_zero((calc.render_alg(a), g.g.left(a) - g.g.right(a)) for a in calc.probes()))
    rec.run("metric and pairing invert", an["metric"], lambda: ck.all_zero(g.inverse_residuals()))
    rec.run("metric dimension", an["dimension"],
            lambda: ck.zero(g.dimension() - calc.one().scale(_rf(model, ex["dimension"]))))
    mc = EquationSet.from_residuals(ring, [metric_compat_residual(conn, g)])
    rec.run("metric compatibility conditions extracted", an["compat"],
            lambda: ("pass", f"{len(mc)} conditions") if len(mc) else ("fail", "none"))

    fam1 = model.values(ex["family1"])

    def fam1_empty():
        sub = EquationSet.from_values(ring, [RatFunc.from_poly(p).substitute(fam1, ring) for p in mc.polys])
        ok, why = sub.vanishes_on({n: RatFunc.var(ring, n) for n in ring.names}, ring)
        if ok:
            return "fail", "family (1) is metric compatible identically"
        lin = sub.saturate(["lam", "b", "alpha"])
        return ("pass", "conditions reduce to " + "; ".join(lin.render()[:4])) if not lin.is_trivial() else ("fail", "no obstruction")
    rec.run("family (1) is not metric compatible for generic parameters", an["compat"], fam1_empty)

    sub = ex["subfamily"]
    vals, sc, sg = _family(model, sub)
    rec.run("subfamily is metric compatible", an["subfamily"], lambda: ck.zero(metric_compat_residual(sc, sg)))
    rec.run("subfamily is flat", an["subfamily"], lambda: ck.zero(sc.curvature()))
    rec.run("subfamily is extendable", an["subfamily"], lambda: ck.all_zero(extendability_residuals(sc.sigma)))
    T = torsion(sc)
    calc = sc.calc
    for gen, text in sub["torsion"].items():
        i = {"dr": DR, "v": V}[gen]
        rec.run(f"subfamily torsion of {gen}", an["subfamily"],
                lambda i=i, text=text: ck.compare(T.values[i].component(0), calc.vol(calc.r(-1).scale(_at(model, vals, text)))))
    for gen, text in sub.get("torsion_recomputed", {}).items():
        i = {"dr": DR, "v": V}[gen]
        rec.run(f"subfamily torsion of {gen}, recomputed", an["subfamily"],
                lambda i=i, text=text: ck.compare(T.values[i].component(0), calc.vol(calc.r(-1).scale(_at(model, vals, text)))))

    def never_zero():
        cs = EquationSet.from_residuals(ring, T.values)
        red, forced = cs.propagate_monomials()
        if cs.is_inconsistent() or red.is_inconsistent():
            how = f" (forcing {', '.join(n + ' = 0' for n in forced)})" if forced else ""
            return "pass", "torsion conditions " + "; ".join(cs.render()) + " have no solution" + how
        return "fail", "torsion can vanish: " + "; ".join(red.render())
    rec.run("subfamily torsion is never zero", an["subfamily"], never_zero)
    star = model.connection(dict(sub["values"], gamma="0"))
    rec.run("subfamily at gamma = 0 has nabla dr = nabla v = 0", an["subfamily"], lambda: ck.all_zero(star.values))

    for name, fam in ex["cotorsion_free"].items():
        fv, fc, fg = _family(model, fam)
        rec.run(f"cotorsion-free family ({name}) is cotorsion-free", an["cotorsion"],
                lambda fc=fc, fg=fg: ck.zero(cotorsion(fc, fg.as_one_form_tensor())))
        rec.run(f"cotorsion-free family ({name}) is flat", an["cotorsion"], lambda fc=fc: ck.zero(fc.curvature()))
        rec.run(f"cotorsion-free family ({name}) is extendable", an["cotorsion"],
                lambda fc=fc: ck.all_zero(extendability_residuals(fc.sigma)))

    w = ex["weak_qlc"]
    wv, wc, wg = _family(model, w)
    rec.run("weak quantum Levi-Civita point is torsion-free", an["wqlc"], lambda: ck.zero(torsion(wc)))
    rec.run("weak quantum Levi-Civita point is cotorsion-free", an["wqlc"], lambda: ck.zero(cotorsion(wc, wg.as_one_form_tensor())))
    rec.run("weak quantum Levi-Civita point is extendable and flat", an["wqlc"],
            lambda: ck.all_zero([("curvature", wc.curvature())] + list(extendability_residuals(wc.sigma))))
    rec.run("weak quantum Levi-Civita point is not metric compatible", an["wqlc"],
            lambda: ck.nonzero(metric_compat_residual(wc, wg), "metric compatibility residual"))

    def classical():
        lim = {k: v.substitute({"lam": RatFunc.const(ring, 0)}, ring) for k, v in wv.items()}
        c0 = model.calc.specialize(lim, ring)
        h = homogeneous_connection(c0, {k: lim[k] for k in PARAMS})
        expected = homogeneous_connection(c0, {k: _rf(model, w["classical"].get(k, "0")) for k in PARAMS})
        return ck.all_zero((h.module.label(i), a - b) for i, (a, b) in enumerate(zip(h.values, expected.values)))
    rec.run("weak quantum Levi-Civita classical limit", an["wqlc"], classical)

    neg = ex["negative_point"]
    nv, nc, ng = _family(model, neg)
    rec.run("negative control: generic point is not metric compatible", an["compat"], lambda: ck.fails_on(mc, nv, ring))
    rec.run("negative control: generic point has cotorsion", an["cotorsion"],
            lambda: ck.nonzero(cotorsion(nc, ng.as_one_form_tensor()), "cotorsion"))


# ---------------------------------------------------------------------------
# bicross.traces
# ---------------------------------------------------------------------------

def run_traces(cfg, rec, rng):
    ex, an = cfg["expected"], cfg["anchors"]
    model = BicrossModel()
    calc, ring = model.calc, model.ring
    conn = model.connection()
    calc = conn.calc
    g = model.metric(conn)
    c = curvature_coefficients(conn)
    sym = {f"c{k + 1}": x for k, x in enumerate(c)}
    R = conn.curvature()

    def r_tensor_g():
        E = FormModule(calc, 1)
        T = g.T
        got = T.zero(2)
        for j, f in g.g.comps.items():
            b, cc = T.index[j]
            got = got + _lift(R.values[b], cc, T).left(f.c[0])
        want = T.zero(2)
        for coef, first, second in ex["r_tensor_g"]:
            s = parse_rf(coef, ring, sym)
            pos = T.position(({"dr": DR, "v": V}[first], {"dr": DR, "v": V}[second]))
            want = want + TensorForm(T, 2, {pos: calc.vol(calc.r(-2).scale(s))})
        del E
        return ck.compare(got, want)
    rec.run("(R (x) id) g", an["rg"], r_tensor_g)

    tr = metric_trace(conn, g, 1)
    for key, label in (("trace_printed", "displayed"), ("trace_recomputed", "recomputed")):
        text = ex[key]
        rec.run(f"metric trace of R, {label} form", an["trace"],
                lambda text=text: ck.compare(tr, calc.vol(calc.r(-2).scale(parse_rf(text, ring, sym)))))
    rec.run("metric trace is closed", an["trace"], lambda: ck.zero(tr.d()))
    rec.run("metric dimension is closed", an["trace"], lambda: ck.zero(calc.func(g.dimension()).d()))
    for name, fam in ex["flat_families"].items():
        _, fc, fg = _family(model, fam)
        rec.run(f"family ({name}): metric trace vanishes", an["trace"], lambda fc=fc, fg=fg: ck.zero(metric_trace(fc, fg, 1)))
    rec.run("metric trace of R^2 (top degree 2)", an["trace"],
            lambda: ("vacuous", "R^2 has degree 4 > top degree") if calc.top_degree < 4 else ck.zero(metric_trace(conn, g, 2)))
    neg = ex["negative_point"]
    _, nc, ng = _family(model, neg)
    rec.run("negative control: metric trace at a curved point", an["trace"],
            lambda: ck.nonzero(metric_trace(nc, ng, 1), "metric trace"))


def _lift(x: TensorForm, c: int, T: TensorModule) -> TensorForm:
    return TensorForm(T, x.deg, {T.position((k, c)): w for k, w in x.comps.items()})
