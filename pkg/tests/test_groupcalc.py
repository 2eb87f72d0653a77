import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from ncg.groupcalc import (
    CalculusSpec,
    FiniteGroup,
    GroupCalculus,
    cycle_verify,
    de_rham,
    evaluation_cycle,
    load_calculus_config,
    sum_over_group_cycle,
)

S3 = FiniteGroup.symmetric3()
CALC = GroupCalculus(CalculusSpec.from_labels(S3, ["u", "v", "w"]))
seeds = st.integers(0, 10 ** 6)


def random_form(calc, rng, n):
    return calc.form(n, {i: calc.random_alg(rng) for i in range(calc.dim(n)) if rng.random() < 0.7})


def test_group_tables():
    assert len(S3) == 6
    for a in range(6):
        assert S3.mul(a, S3.inv(a)) == S3.identity
        for b in range(6):
            for c in range(6):
                assert S3.mul(S3.mul(a, b), c) == S3.mul(a, S3.mul(b, c))


def test_s3_graded_dimensions():
    assert CALC.ext.dims() == (1, 3, 4, 3, 1)
    assert CALC.top_degree == 4


@pytest.mark.parametrize("n,labels", [(5, ["g", "g4"]), (5, ["g", "g2", "g3", "g4"]), (4, ["g", "g3"]), (3, ["g"])])
def test_abelian_groups_give_exterior_algebras(n, labels):
    calc = GroupCalculus(CalculusSpec.from_labels(FiniteGroup.cyclic(n), labels))
    k = len(labels)
    assert calc.ext.dims() == tuple(comb(k, m) for m in range(k + 1))


def test_generating_set_must_be_conjugation_stable():
    with pytest.raises(ValueError):
        CalculusSpec.from_labels(S3, ["u", "v"])
    with pytest.raises(ValueError):
        CalculusSpec.from_labels(S3, ["e", "u"])


def test_config_loader_matches_direct_construction():
    calc = load_calculus_config({"group": "S3", "generators": ["u", "v", "w"]})
    assert calc.ext.dims() == CALC.ext.dims()


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(0, 2), st.integers(0, 2))
def test_graded_leibniz_and_d_squared(seed, p, q):
    rng = random.Random(seed)
    a, b = random_form(CALC, rng, p), random_form(CALC, rng, q)
    sign = -1 if p % 2 else 1
    lhs = a.wedge(b).d()
    rhs = a.d().wedge(b) + a.wedge(b.d()).scale(sign)
    assert (lhs - rhs).is_zero()
    assert a.d().d().is_zero()


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_wedge_is_associative(seed):
    rng = random.Random(seed)
    a, b, c = (random_form(CALC, rng, 1) for _ in range(3))
    assert a.wedge(b).wedge(c) == a.wedge(b.wedge(c))


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_calculus_is_inner(seed):
    rng = random.Random(seed)
    f = CALC.random_alg(rng)
    th = CALC.theta()
    assert (th.right(f) - th.left(f) - CALC.d_alg(f)).is_zero()


def test_theta_squares_to_zero_and_is_closed():
    th = CALC.theta()
    assert th.wedge(th).is_zero()
    assert th.d().is_zero()


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_top_form_is_central(seed):
    f = CALC.random_alg(random.Random(seed))
    vol = CALC.basis_form(4, 0)
    assert vol.left(f) == vol.right(f)


def test_sum_over_group_is_a_cycle_and_evaluation_is_not():
    assert cycle_verify(sum_over_group_cycle(CALC)).ok
    check = cycle_verify(evaluation_cycle(CALC))
    assert not check.ok and check.witness


def test_de_rham_dimensions():
    assert [de_rham(CALC, n)[0] for n in range(5)] == [1, 1, 0, 1, 1]
