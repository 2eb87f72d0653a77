"""Morphisms of the bimodule-connection category and the laws of the external product.

Objects are (E, nabla, sigma) over a finite-dimensional backend. A morphism of
degree n is a left-module map E -> Omega^n (x) F that is also a right-module map
and intertwines the braidings with a sign. Such maps are found by solving a
linear system over delta-function coordinates.
"""

from __future__ import annotations

from ..exactalg import ExactMatrix, RatFunc, kernel
from .connections import (
    LeftConnection,
    SigmaMap,
    sigma_intertwiner_residuals,
    boxtimes,
    lift_right,
    morphism_derivative,
    sigma_push,
    tensor_connection,
)
from .modules import Module, TensorForm, TensorModule
from .morphisms import GradedMorphism


def _coords(calc) -> int:
    if not calc.finite_dimensional:
        raise ValueError("morphism spaces need a finite-dimensional coefficient algebra")
    return len(calc.one().v)


def _unit_morphisms(source: Module, target: Module, degree: int) -> list[GradedMorphism]:
    calc = source.calc
    ng = _coords(calc)
    out = []
    for i in range(source.ngens()):
        for k in range(target.ngens()):
            for I in range(calc.dim(degree)):
                for x in range(ng):
                    vals = [target.zero(degree) for _ in range(source.ngens())]
                    vals[i] = TensorForm(target, degree, {k: calc.basis_form(degree, I, calc.delta(x))}, canonical=False)
                    out.append(GradedMorphism(source, target, degree, vals))
    return out


def _residual_vector(phi: GradedMorphism, sigma_src: SigmaMap | None, sigma_tgt: SigmaMap | None) -> list:
    res = list(phi.right_module_residuals())
    if sigma_src is not None and sigma_tgt is not None:
        res.extend(r for _, r in sigma_intertwiner_residuals(phi, sigma_src, sigma_tgt))
    res.extend(phi.well_defined_residuals())
    return _full_coeffs(res)


def _full_coeffs(res) -> list:
    # dense coordinates so every unit morphism yields a vector of the same length
    out = []
    for r in res:
        calc = r.module.calc
        ng = _coords(calc)
        zero = RatFunc.const(calc.ring, 0)
        for k in range(r.module.ngens()):
            w = r.comps.get(k)
            for I in range(calc.dim(r.deg)):
                a = w.c.get(I) if w is not None else None
                out.extend(a.v if a is not None else [zero] * ng)
    return out


def morphism_space(source: Module, target: Module, degree: int,
                   sigma_src: SigmaMap | None = None, sigma_tgt: SigmaMap | None = None) -> list[GradedMorphism]:
    """Basis of bimodule maps E -> Omega^n (x) F, intertwining the braidings when both are given."""
    units = _unit_morphisms(source, target, degree)
    cols = [_residual_vector(u, sigma_src, sigma_tgt) for u in units]
    ring = source.calc.ring
    if not cols or not cols[0]:
        return units
    M = ExactMatrix(ring, [list(r) for r in zip(*cols)])
    out = []
    for v in kernel(M):
        acc = GradedMorphism.zero(source, target, degree)
        for c, u in zip(v, units):
            if c:
                acc = acc + u.scale(c)
        out.append(acc)
    return out


def random_combination(basis: list[GradedMorphism], rng, lo: int = -3, hi: int = 3) -> GradedMorphism:
    if not basis:
        raise ValueError("empty morphism space")
    acc = None
    for b in basis:
        c = rng.randint(lo, hi)
        if c:
            term = b.scale(RatFunc.const(b.source.calc.ring, c))
            acc = term if acc is None else acc + term
    return acc if acc is not None else basis[0]


def random_left_morphism(source: Module, target: Module, degree: int, rng, density: float = 0.5) -> GradedMorphism:
    """A left-module map with random small integer function coefficients."""
    calc = source.calc
    raw = []
    for _ in range(source.ngens()):
        comps = {}
        for k in range(target.ngens()):
            coeffs = {}
            for I in range(calc.dim(degree)):
                if rng.random() < density:
                    coeffs[I] = calc.random_alg(rng)
            if coeffs:
                comps[k] = calc.form(degree, coeffs)
        raw.append(TensorForm(target, degree, comps))
    return GradedMorphism.projected(source, target, degree, raw)


# ---------------------------------------------------------------------------
# laws
# ---------------------------------------------------------------------------

def _reindex(phi: GradedMorphism, source: Module, target: Module) -> GradedMorphism:
    """Same values viewed between equal-key modules built separately."""
    return GradedMorphism(source, target, phi.degree,
                          [TensorForm(target, v.deg, v.comps) for v in phi.values])


def boxtimes_composition_residual(phi, kappa, psi, tau, sigma_mid: SigmaMap, sigma_top: SigmaMap,
                                  sign: int | None = None) -> GradedMorphism:
    """(phi [x] kappa) o (psi [x] tau) - s (phi o psi) [x] (kappa o tau).

    psi: E -> E', phi: E' -> E'', tau: F -> F', kappa: F' -> F''. The default sign
    s = (-1)^{|phi||tau|} comes from moving the forms of phi past those of tau.
    """
    if sign is None:
        sign = -1 if (phi.degree * tau.degree) % 2 else 1
    lhs = boxtimes(phi, kappa, sigma_top).compose(boxtimes(psi, tau, sigma_mid))
    rhs = boxtimes(phi.compose(psi), kappa.compose(tau), sigma_top)
    rhs = _reindex(rhs, lhs.source, lhs.target)
    return lhs + rhs if sign == -1 else lhs - rhs


def boxtimes_leibniz_residual(phi, psi, conn_e: LeftConnection, conn_g: LeftConnection,
                              conn_f: LeftConnection, conn_h: LeftConnection) -> GradedMorphism:
    """nabla nabla(phi [x] psi) - nabla nabla(phi) [x] psi - (-1)^{|phi|} phi [x] nabla nabla(psi)."""
    sg = conn_g.sigma
    t_src = tensor_connection(conn_e, conn_f)
    t_tgt = tensor_connection(conn_g, conn_h)
    box = boxtimes(phi, psi, sg)
    lhs = morphism_derivative(_reindex(box, t_src.module, t_tgt.module), t_src, t_tgt)
    a = boxtimes(morphism_derivative(phi, conn_e, conn_g), psi, sg)
    b = boxtimes(phi, morphism_derivative(psi, conn_f, conn_h), sg)
    a = _reindex(a, lhs.source, lhs.target)
    b = _reindex(b, lhs.source, lhs.target)
    return lhs - a - (b if phi.degree % 2 == 0 else -b)


def composition_leibniz_residual(phi, psi, conn_e, conn_f, conn_g) -> GradedMorphism:
    """nabla nabla(phi o psi) - phi o nabla nabla(psi) - (-1)^{|psi|} nabla nabla(phi) o psi.

    psi: E -> F, phi: F -> G.
    """
    lhs = morphism_derivative(phi.compose(psi), conn_e, conn_g)
    a = phi.compose(morphism_derivative(psi, conn_e, conn_f))
    b = morphism_derivative(phi, conn_f, conn_g).compose(psi)
    return lhs - a - (b if psi.degree % 2 == 0 else -b)


def tensor_curvature_formula(conn_e: LeftConnection, conn_f: LeftConnection) -> GradedMorphism:
    """R_E (x) id + (sigma_E (x) id)(id (x) R_F) on generator pairs of E (x) F."""
    if conn_e.sigma is None:
        raise ValueError("the left factor needs a braiding")
    T = TensorModule([conn_e.module, conn_f.module])
    RE, RF = conn_e.curvature(), conn_f.curvature()
    vals = [lift_right(RE.values[i], l, T) + sigma_push(conn_e.sigma, i, RF.values[l], T) for (i, l) in T.index]
    return GradedMorphism(T, T, 2, vals)


def tensor_curvature_residual(conn_e: LeftConnection, conn_f: LeftConnection) -> GradedMorphism:
    """R_{E(x)F} minus the explicit two-term formula."""
    R = tensor_connection(conn_e, conn_f).curvature()
    return R - _reindex(tensor_curvature_formula(conn_e, conn_f), R.source, R.target)


def tensor_curvature_boxtimes_residual(conn_e: LeftConnection, conn_f: LeftConnection) -> GradedMorphism:
    """R_{E(x)F} - R_E [x] id - id [x] R_F, with the external product taken through sigma_E."""
    R = tensor_connection(conn_e, conn_f).curvature()
    E, F = conn_e.module, conn_f.module
    s = conn_e.sigma
    a = boxtimes(conn_e.curvature(), GradedMorphism.identity(F), s)
    b = boxtimes(GradedMorphism.identity(E), conn_f.curvature(), s)
    return R - _reindex(a, R.source, R.target) - _reindex(b, R.source, R.target)
