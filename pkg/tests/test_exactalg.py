from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ncg.exactalg import (
    QQ,
    ExactMatrix,
    PolyRing,
    RatFunc,
    kernel,
    named_field,
    parse_rf,
    poly_gcd,
    rank,
    rref,
    solve,
)
from ncg.exactalg import _kernels_py, kernels

small = st.integers(-6, 6)
FIELDS = ["Q(omega)", "Q(i)", "Q(sqrt3)", "Q(zeta12)"]


def elem(field, coeffs):
    return field.from_coeffs([Fraction(c) for c in coeffs[: field.degree]])


@st.composite
def field_elems(draw, name):
    f = named_field(name)
    return elem(f, draw(st.lists(small, min_size=f.degree, max_size=f.degree)))


# -- number fields -------------------------------------------------------------

def test_generators_satisfy_their_minimal_polynomials():
    w = named_field("Q(omega)").gen()
    assert w * w + w + 1 == 0
    s = named_field("Q(sqrt3)").gen()
    assert s * s == 3
    i = named_field("Q(i)").gen()
    assert i * i == -1
    z = named_field("Q(zeta12)").gen()
    assert z ** 12 == 1 and z ** 6 == -1


def test_reducible_minimal_polynomial_is_rejected():
    from ncg.exactalg import NumberField
    with pytest.raises(ValueError):
        NumberField("x", [-4, 0, 1])


@pytest.mark.parametrize("name", FIELDS)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_field_axioms(name, data):
    a, b, c = (data.draw(field_elems(name)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    if a:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        named_field("Q(i)").zero().inverse()


# -- polynomials and rational functions ------------------------------------------

R = PolyRing(("x", "y", "z"))


@st.composite
def polys(draw, max_terms=4, max_deg=2):
    p = R.zero()
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.integers(0, max_deg)) for _ in range(3))
        p = p + R.monomial(e, draw(small))
    return p


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_polynomial_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == R.zero()


@settings(max_examples=60, deadline=None)
@given(polys(), polys())
def test_exact_division_undoes_multiplication(a, b):
    if b.terms:
        assert (a * b).divexact(b) == a


@settings(max_examples=40, deadline=None)
@given(polys(3, 2), polys(3, 2), polys(2, 1))
def test_gcd_divides_and_contains_common_factor(a, b, c):
    if not (a.terms and b.terms and c.terms):
        return
    g = poly_gcd(a * c, b * c)
    assert (a * c).divmod(g)[1].is_zero()
    assert (b * c).divmod(g)[1].is_zero()
    assert g.divmod(c.monic())[1].is_zero()


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys(3, 2))
def test_gcd_matches_sympy(a, b, c):
    sympy = pytest.importorskip("sympy")
    x, y, z = sympy.symbols("x y z")
    to_sym = lambda p: sympy.sympify(str(p).replace("^", "**"), locals={"x": x, "y": y, "z": z}) if p.terms else 0
    ours = poly_gcd(a * c, b * c)
    theirs = sympy.gcd(sympy.expand(to_sym(a * c)), sympy.expand(to_sym(b * c)))
    assert sympy.simplify(to_sym(ours) / theirs).is_number if theirs != 0 else not ours.terms


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys(), polys())
def test_rational_functions_are_canonical(a, b, c, d):
    if not (b.terms and d.terms):
        return
    f, g = RatFunc(R, a, b), RatFunc(R, c, d)
    assert f + g == RatFunc(R, a * d + c * b, b * d)
    assert f * g == RatFunc(R, a * c, b * d)
    if a.terms:
        assert f * f.inverse() == RatFunc.const(R, 1)
        assert hash(RatFunc(R, a * d, b * d)) == hash(f)


@settings(max_examples=40, deadline=None)
@given(polys(), polys(), st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 3))
def test_substitution_is_a_homomorphism(a, b, x, y, z):
    pt = {"x": RatFunc.const(QQ_RING, x), "y": RatFunc.const(QQ_RING, y), "z": RatFunc.const(QQ_RING, z)}
    fa, fb = RatFunc.from_poly(a), RatFunc.from_poly(b)
    assert (fa * fb).substitute(pt, QQ_RING) == fa.substitute(pt, QQ_RING) * fb.substitute(pt, QQ_RING)
    assert (fa + fb).substitute(pt, QQ_RING) == fa.substitute(pt, QQ_RING) + fb.substitute(pt, QQ_RING)


QQ_RING = PolyRing(())


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_printing_and_parsing_round_trip(a, b):
    if not b.terms:
        return
    f = RatFunc(R, a, b)
    assert parse_rf(str(f), R) == f


def test_parse_accepts_field_generator_and_caret():
    F = PolyRing(("a",), named_field("Q(omega)"))
    w = named_field("Q(omega)").gen()
    assert parse_rf("omega^2 + omega + 1", F).is_zero()
    assert parse_rf("a*omega", F) == RatFunc.var(F, "a") * RatFunc.const(F, w)
    with pytest.raises(ValueError):
        parse_rf("a +", F)


# -- matrices -------------------------------------------------------------------

int_matrices = st.integers(1, 6).flatmap(
    lambda m: st.lists(st.lists(st.integers(-5, 5), min_size=m, max_size=m), min_size=1, max_size=6))


@settings(max_examples=60, deadline=None)
@given(int_matrices)
def test_kernel_vectors_are_annihilated_and_rank_nullity_holds(rows):
    M = ExactMatrix(QQ_RING, rows)
    ker = kernel(M)
    for v in ker:
        assert all(x.is_zero() for x in M.apply(v))
    assert rank(M) + len(ker) == M.ncols


@settings(max_examples=60, deadline=None)
@given(int_matrices)
def test_rref_methods_agree(rows):
    M = ExactMatrix(QQ_RING, rows)
    a = rref(M, "rational")
    assert rref(M, "field") == a
    assert rref(M, "fraction_free") == a


@settings(max_examples=40, deadline=None)
@given(int_matrices)
def test_rank_matches_an_independent_implementation(rows):
    sympy = pytest.importorskip("sympy")
    assert rank(ExactMatrix(QQ_RING, rows)) == sympy.Matrix(rows).rank()


def test_solve_and_inconsistent_system():
    M = ExactMatrix(QQ_RING, [[1, 2], [2, 4]])
    assert solve(M, [1, 3]) is None
    x = solve(M, [1, 2])
    assert [v for v in M.apply(x)] == [RatFunc.const(QQ_RING, 1), RatFunc.const(QQ_RING, 2)]


def test_symbolic_rank_is_generic():
    S = PolyRing(("t",))
    t = RatFunc.var(S, "t")
    M = ExactMatrix(S, [[t, 1], [1, t]])
    assert rank(M) == 2
    assert rank(ExactMatrix(QQ_RING, [[1, 1], [1, 1]])) == 1


def test_rational_field_is_the_default():
    assert R.field == QQ


# -- compiled kernels against the fallback ---------------------------------------

@settings(max_examples=80, deadline=None)
@given(int_matrices)
def test_kernel_backends_agree_on_rref(rows):
    m = len(rows[0])
    assert kernels.int_rref([list(r) for r in rows], m) == _kernels_py.int_rref([list(r) for r in rows], m)


exps = st.tuples(st.integers(0, 3), st.integers(0, 3))
pdicts = st.dictionaries(exps, st.integers(-9, 9).filter(bool), max_size=6)


@settings(max_examples=80, deadline=None)
@given(pdicts, pdicts)
def test_kernel_backends_agree_on_poly_mul(a, b):
    assert kernels.poly_mul(a, b) == _kernels_py.poly_mul(a, b)
