import math
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dunklops.errors import DimensionMismatchError, NotDivisibleError
from dunklops.poly import MultiPoly, SphereFunction, format_poly, parse_poly

from conftest import rand_poly


def var(d, i):
    return MultiPoly.variable(d, i)


def test_arithmetic_examples():
    x1, x2 = var(2, 0), var(2, 1)
    assert (x1 + x2) * (x1 - x2) == x1**2 - x2**2
    f = x1 * x2 + 3
    assert f + MultiPoly.zero(2) == f
    assert f.scale(0) == MultiPoly.zero(2)
    assert f.scale(0).terms == {}


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        var(2, 0) + var(3, 0)


@st.composite
def small_polys(draw):
    d = draw(st.integers(2, 3))
    n = draw(st.integers(0, 4))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(0, 3)) for _ in range(d))
        terms[e] = Q(draw(st.integers(-5, 5)))
    return MultiPoly(d, terms)


@settings(max_examples=60, deadline=None)
@given(small_polys(), small_polys(), small_polys())
def test_ring_axioms(f, g, h):
    d = max(f.dimension, g.dimension, h.dimension)

    def up(p):
        return MultiPoly(d, {e + (0,) * (d - p.dimension): c for e, c in p.terms.items()})

    f, g, h = up(f), up(g), up(h)
    assert (f + g) + h == f + (g + h)
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f


def test_differentiate():
    x1, x2 = var(2, 0), var(2, 1)
    assert (x1**2 * x2).diff(0) == 2 * x1 * x2
    assert (x1**3).diff(1).is_zero()
    with pytest.raises(DimensionMismatchError):
        x1.diff(5)


def test_mixed_partials_commute(rng):
    for _ in range(10):
        f = rand_poly(rng, 3, 6)
        assert f.diff(0).diff(1) == f.diff(1).diff(0)


def test_compose_linear():
    d = 3
    x1 = var(d, 0)
    sign = [[-1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert x1.compose_linear(sign) == -x1
    ns = MultiPoly.norm_squared(d)
    rot = [[Q(3, 5), Q(4, 5), 0], [Q(-4, 5), Q(3, 5), 0], [0, 0, 1]]
    assert ns.compose_linear(rot) == ns
    ident = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    f = x1 * var(d, 1) - 2
    assert f.compose_linear(ident) == f


def test_compose_linear_respects_products(rng):
    rot = [[Q(3, 5), Q(4, 5)], [Q(-4, 5), Q(3, 5)]]
    for _ in range(5):
        f, g = rand_poly(rng, 2, 4), rand_poly(rng, 2, 4)
        assert (f * g).compose_linear(rot) == f.compose_linear(rot) * g.compose_linear(rot)


def test_divide_by_linear_examples():
    x1, x2 = var(2, 0), var(2, 1)
    assert (x1**2 - x2**2).divide_by_linear([1, -1]) == x1 + x2
    with pytest.raises(NotDivisibleError):
        (x1 + 1).divide_by_linear([1, 0])


def test_divide_round_trip(rng):
    for _ in range(10):
        g = rand_poly(rng, 3, 5)
        v = [Q(rng.randint(-4, 4)) for _ in range(3)]
        if all(c == 0 for c in v):
            v[0] = Q(1)
        form = MultiPoly.linear_form(v)
        assert (g * form).divide_by_linear(v) == g


def test_reduce_mod_sphere():
    d = 3
    ns = MultiPoly.norm_squared(d)
    assert ns.reduce_mod_sphere().rep == MultiPoly.one(d)
    x1, x2, x3 = (var(d, i) for i in range(d))
    assert (x3**2).reduce_mod_sphere().rep == MultiPoly.one(d) - x1**2 - x2**2
    low = x1 * x3 + x2
    assert low.reduce_mod_sphere().rep == low
    with pytest.raises(DimensionMismatchError):
        MultiPoly.one(1).reduce_mod_sphere()


def test_reduce_kills_ideal(rng):
    ns = MultiPoly.norm_squared(3)
    for _ in range(8):
        f = rand_poly(rng, 3, 4)
        assert (f * (ns - 1)).reduce_mod_sphere().is_zero()


def test_reduce_preserves_sphere_values(rng):
    for _ in range(5):
        f = rand_poly(rng, 3, 5)
        r = f.reduce_mod_sphere()
        for _ in range(20):
            v = [rng.gauss(0, 1) for _ in range(3)]
            norm = math.sqrt(sum(c * c for c in v))
            pt = [c / norm for c in v]
            a, b = f.evaluate(pt), r.evaluate(pt)
            assert abs(a - b) <= 1e-10 * max(1.0, abs(a))


def test_homogeneous_parts():
    x1, x2 = var(2, 0), var(2, 1)
    f = 1 + x1 + x1 * x2
    parts = f.homogeneous_parts()
    assert [deg for deg, _ in parts] == [0, 1, 2]
    total = MultiPoly.zero(2)
    for _, p in parts:
        assert p.is_homogeneous()
        total = total + p
    assert total == f
    g = x1 * x2
    assert g.homogeneous_parts() == [(2, g)]
    assert MultiPoly.zero(2).homogeneous_parts() == []


def test_evaluate():
    x1, x2 = var(2, 0), var(2, 1)
    f = x1**2 + x2
    assert f.evaluate([Q(2), Q(3)]) == 7
    assert f.evaluate([2, 3]) == 7
    assert (f - 7).evaluate([0, 0]) == -7
    assert abs(MultiPoly.norm_squared(2).evaluate([0.6, 0.8]) - 1.0) < 1e-12


def test_text_round_trip(rng):
    p = MultiPoly(3, {(2, 0, 1): Q(3, 2), (0, 0, 0): Q(-7), (1, 1, 1): Q(5)})
    text = format_poly(p)
    assert parse_poly(text, 3) == p
    assert format_poly(MultiPoly.zero(2)) == "0"
    assert parse_poly("0", 2) == MultiPoly.zero(2)
    for _ in range(10):
        q = rand_poly(rng, 4, 5)
        assert parse_poly(format_poly(q), 4) == q


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_poly("not a polynomial", 2)
    with pytest.raises(ValueError):
        parse_poly("3 * y1^2", 2)
    with pytest.raises(DimensionMismatchError):
        parse_poly("3 * x5^2", 2)


def test_sphere_function_arithmetic(rng):
    f = rand_poly(rng, 3, 4).reduce_mod_sphere()
    g = rand_poly(rng, 3, 4).reduce_mod_sphere()
    assert (f + g) - g == f
    assert (f * g).rep == (g * f).rep
    assert (f.scale(Q(2, 3))).rep == f.rep.scale(Q(2, 3))
    assert (-f) + f == SphereFunction.zero(3)
    # products re-reduce: degree in the last variable stays at most 1
    assert all(e[-1] <= 1 for e in (f * g).rep.terms)


def test_sphere_function_equality_is_canonical(rng):
    f = rand_poly(rng, 3, 4)
    ns = MultiPoly.norm_squared(3)
    g = f + (ns - 1) * rand_poly(rng, 3, 3)
    assert f.reduce_mod_sphere() == g.reduce_mod_sphere()
    assert SphereFunction.from_poly(f).rep.terms == f.reduce_mod_sphere().rep.terms
