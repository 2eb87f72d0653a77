import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ncg.conncore.category import random_left_morphism, tensor_curvature_residual
from ncg.conncore.cohomology import flat_cohomology
from ncg.conncore.connections import (
    NotBimodule,
    algebra_connection,
    bianchi_residuals,
    dd_commutator,
    extendability_residuals,
    metric_compat_residual,
    riemann_antisymmetry_residual,
    sigma_residuals,
    tensor_connection,
    torsion,
)
from ncg.conncore.equations import EquationSet
from ncg.conncore.modules import ProjectorModule
from ncg.conncore.traces import (
    DualBasis,
    TraceError,
    cycle_trace,
    grassmann_connection,
    grassmann_curvature_formula,
    oscat_residual,
)
from ncg.exactalg import PolyRing, RatFunc
from ncg.groupcalc import evaluation_cycle, sum_over_group_cycle
from ncg.scenarios.models import S3Model

MODEL = S3Model(PolyRing(()))
CALC = MODEL.calc
coef = st.integers(-3, 3)
seeds = st.integers(0, 10 ** 6)
points = st.fixed_dictionaries({k: coef for k in "abcde"})


def conn_at(p):
    return MODEL.connection(p)


@settings(max_examples=15, deadline=None)
@given(points)
def test_bianchi_identities_at_random_points(p):
    b = bianchi_residuals(conn_at(p))
    assert all(r.is_zero() for r in b.first)
    assert all(r.is_zero() for r in b.second)


@settings(max_examples=15, deadline=None)
@given(points, seeds)
def test_curvature_is_a_left_module_map(p, seed):
    conn = conn_at(p)
    R = conn.curvature()
    f = CALC.random_alg(random.Random(seed))
    for i in range(3):
        x = conn.module.gen(i, f)
        assert conn.apply_n(conn.apply_n(x)) == R.values[i].left(f)


@settings(max_examples=15, deadline=None)
@given(points)
def test_every_point_is_a_bimodule_connection(p):
    conn = conn_at(p)
    assert not isinstance(conn.sigma, NotBimodule)
    assert all(r.is_zero() for _, r in sigma_residuals(conn, conn.sigma))


@settings(max_examples=10, deadline=None)
@given(points, points, seeds, st.integers(0, 2))
def test_nabla_nabla_squared_is_the_curvature_commutator(p, q, seed, deg):
    e, f = conn_at(p), conn_at(q)
    psi = random_left_morphism(e.module, f.module, deg, random.Random(seed))
    assert dd_commutator(psi, e, f).is_zero()


FLAT_FAMILIES = {
    "1": lambda a: {"a": a, "b": 0, "c": 0, "d": 0, "e": 0},
    "3": lambda a: {"a": a, "b": 0, "c": 0, "d": a, "e": 0},
    "4": lambda a: {"a": a, "b": 0, "c": a, "d": 0, "e": 0},
}


@pytest.mark.parametrize("fam", sorted(FLAT_FAMILIES))
@settings(max_examples=6, deadline=None)
@given(a=coef, q=points)
def test_tensor_curvature_formula_for_extendable_left_factor(fam, a, q):
    left = conn_at(FLAT_FAMILIES[fam](a))
    assert all(r.is_zero() for _, r in extendability_residuals(left.sigma))
    assert tensor_curvature_residual(left, conn_at(q)).is_zero()


def test_tensor_product_of_flat_extendable_connections_is_flat():
    e = conn_at(FLAT_FAMILIES["3"](2))
    f = conn_at(FLAT_FAMILIES["4"](-1))
    assert tensor_connection(e, f).curvature().is_zero()


def test_zero_christoffel_point_has_torsion_minus_d():
    conn = conn_at({"a": 1, "b": 0, "c": 0, "d": 1, "e": 0})
    T = torsion(conn)
    for b in range(3):
        assert (T.values[b].component(0) + CALC.basis_form(1, b).d()).is_zero()


def test_flat_metric_compatible_point_satisfies_antisymmetry():
    conn = conn_at({"a": 1, "b": 0, "c": 0, "d": 1, "e": 0})
    g = MODEL.euclidean()
    assert metric_compat_residual(conn, g).is_zero()
    assert riemann_antisymmetry_residual(conn, g).is_zero()


def test_de_rham_of_the_algebra():
    assert list(flat_cohomology(algebra_connection(CALC)).dims) == [1, 1, 0, 1, 1]


def test_flat_cohomology_refuses_a_curved_connection():
    with pytest.raises(ValueError):
        flat_cohomology(conn_at({"a": 2, "b": 1, "c": 3, "d": -1, "e": 2}))


# -- projective modules and traces ---------------------------------------------------

@st.composite
def rank_one_projectors(draw, n=2):
    mats = []
    for _ in range(6):
        v = draw(st.lists(coef, min_size=n, max_size=n))
        w = draw(st.lists(coef, min_size=n, max_size=n))
        s = sum(x * y for x, y in zip(v, w))
        if s == 0:
            mats.append([[Fraction(int(i == j and i == 0)) for j in range(n)] for i in range(n)])
        else:
            mats.append([[Fraction(v[i] * w[j], s) for j in range(n)] for i in range(n)])
    return [[CALC.function([mats[x][i][j] for x in range(6)]) for j in range(n)] for i in range(n)]


@settings(max_examples=10, deadline=None)
@given(rank_one_projectors())
def test_grassmann_connection_identities(P):
    m = ProjectorModule(CALC, P)
    g = grassmann_connection(m)
    assert all(r.is_zero() for r in g.leibniz_residuals())
    assert (g.curvature() - grassmann_curvature_formula(m)).is_zero()
    assert all(w.is_zero() for row in oscat_residual(g) for w in row)


@settings(max_examples=10, deadline=None)
@given(rank_one_projectors(), seeds)
def test_cycle_trace_ignores_the_dual_basis(P, seed):
    rng = random.Random(seed)
    m = ProjectorModule(CALC, P)
    phi = sum_over_group_cycle(CALC)
    theta = random_left_morphism(m, m, 4, rng)
    assert cycle_trace(theta, phi) == cycle_trace(theta, phi, DualBasis.random(m, rng))


def test_trace_needs_a_cycle_of_matching_degree():
    m = ProjectorModule(CALC, [[CALC.one()]])
    theta = random_left_morphism(m, m, 4, random.Random(0))
    with pytest.raises(TraceError):
        cycle_trace(theta, evaluation_cycle(CALC))
    with pytest.raises(TraceError):
        cycle_trace(random_left_morphism(m, m, 3, random.Random(0)), sum_over_group_cycle(CALC))


# -- equation sets -----------------------------------------------------------------

RING = PolyRing(("x", "y", "lam"))


def test_equivalence_up_to_scalars_and_saturation():
    a = EquationSet.parse(RING, ["x*lam^2 = y*lam^2", "2*x + 2 = 0"])
    b = EquationSet.parse(RING, ["x - y = 0", "x = -1"])
    assert a.saturate(["lam"]).equivalent(b)[0]
    assert not a.equivalent(EquationSet.parse(RING, ["x = 1"]))[0]


def test_vanishing_and_violation_on_points():
    eqs = EquationSet.parse(RING, ["x^2 = y"])
    pt = lambda x, y: {"x": RatFunc.const(RING, x), "y": RatFunc.const(RING, y), "lam": RatFunc.var(RING, "lam")}
    assert eqs.vanishes_on(pt(2, 4), RING)[0]
    assert not eqs.vanishes_on(pt(2, 3), RING)[0]


def test_monomial_propagation_detects_inconsistency():
    eqs = EquationSet.parse(RING, ["3*x^2 = 0", "x*lam = 4"])
    red, forced = eqs.propagate_monomials()
    assert forced == ["x"] and red.is_inconsistent()
    ok, _ = EquationSet.parse(RING, ["x*y = 0", "x = 1"]).propagate_monomials()
    assert not ok.is_inconsistent()
