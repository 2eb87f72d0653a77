import random

from hypothesis import given, settings, strategies as st

from ncg.conncore.connections import derive_sigma, extendability_residuals, sigma_residuals, torsion
from ncg.conncore.equations import EquationSet
from ncg.exactalg import PolyRing, RatFunc, parse_rf
from ncg.orecalc import (
    PARAMS,
    OreCalculus,
    bicross_metric,
    bicross_ring,
    curvature_coefficients,
    homogeneous_connection,
)

RING = bicross_ring()
CALC = OreCalculus(RING)
seeds = st.integers(0, 10 ** 6)


def rf(text):
    return parse_rf(text, RING)


def test_commutation_relations():
    r, t, lam = CALC.r(), CALC.t(), CALC.lam
    assert (r * t - t * r - r.scale(lam)).is_zero()
    assert (CALC.dt().left(r) - CALC.dt().right(r) - CALC.dr().scale(lam)).is_zero()
    assert (CALC.dt().left(t) - CALC.dt().right(t) - CALC.dt().scale(lam)).is_zero()


def test_negative_powers_of_r_invert_r():
    assert CALC.r(-1) * CALC.r(1) == CALC.one()
    assert CALC.r(-2) * CALC.r(3) == CALC.r(1)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_random_elements_associate_and_d_is_a_derivation(seed):
    rng = random.Random(seed)
    x, y, z = (CALC.random_alg(rng) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert CALC.d_alg(x * y) == CALC.d_alg(x).right(y) + CALC.d_alg(y).left(x)
    assert CALC.d_alg(x).d().is_zero()


def test_dv_in_the_volume_basis():
    assert (CALC.v().d() - CALC.vol(CALC.r(-1).scale(RatFunc.const(RING, -2)))).is_zero()


def test_v_squared_is_lambda_vol():
    v, dr = CALC.v(), CALC.dr()
    assert (v.wedge(v) - v.wedge(dr).scale(CALC.lam)).is_zero()
    assert dr.wedge(dr).is_zero()


def test_classical_limit_is_commutative():
    ring0 = PolyRing(tuple(n for n in RING.names if n != "lam"))
    vals = {n: RatFunc.var(ring0, n) for n in ring0.names}
    vals["lam"] = RatFunc.const(ring0, 0)
    c0 = CALC.specialize(vals, ring0)
    r, t = c0.r(), c0.t()
    assert r * t == t * r


def test_torsion_of_the_homogeneous_connection():
    conn = homogeneous_connection(CALC)
    T = torsion(conn)
    vol = lambda s: CALC.vol(CALC.r(-1).scale(rf(s)))
    assert (T.values[0].component(0) - vol("lam*alpha + beta - gamma")).is_zero()
    assert (T.values[1].component(0) - vol("lam*alphap + betap - gammap + 2")).is_zero()


def test_homogeneous_connection_is_bimodule_and_curvature_has_four_coefficients():
    conn = homogeneous_connection(CALC)
    sigma = derive_sigma(conn)
    assert all(r.is_zero() for _, r in sigma_residuals(conn, sigma))
    c = curvature_coefficients(conn)
    assert len(c) == 4 and all(not x.is_zero() for x in c)


def test_zero_connection_point_is_flat_but_not_torsion_free():
    vals = {p: RatFunc.const(RING, 0) for p in PARAMS}
    conn = homogeneous_connection(CALC, vals)
    assert conn.curvature().is_zero()
    assert not torsion(conn).is_zero()


def test_extendability_conditions_vanish_at_flat_points_only():
    conn = homogeneous_connection(CALC)
    conn.sigma = derive_sigma(conn)
    ext = EquationSet.from_residuals(RING, [r for _, r in extendability_residuals(conn.sigma)])
    zero = {n: RatFunc.const(RING, 0) for n in PARAMS}
    zero.update({"lam": RatFunc.var(RING, "lam"), "b": RatFunc.var(RING, "b")})
    assert ext.vanishes_on(zero, RING)[0]
    bad = dict(zero, alpha=RatFunc.const(RING, 1), beta=RatFunc.const(RING, 1))
    assert not ext.vanishes_on(bad, RING)[0]


def test_metric_is_central_and_inverts_its_pairing():
    g = bicross_metric(CALC)
    assert all(r.is_zero() for _, r in g.inverse_residuals())
    for a in CALC.probes():
        assert g.g.left(a) == g.g.right(a)
