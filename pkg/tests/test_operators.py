from fractions import Fraction as Q

import pytest

from dunklops.groups import RootSystem
from dunklops.operators import (
    OperatorContext,
    angular_classical,
    angular_difference,
    angular_dunkl,
    difference_op_E,
    dunkl,
    dunkl_gradient,
    h_laplacian,
    h_laplacian_explicit,
    is_group_invariant,
    laplace_beltrami_h,
    spherical_gradient_classical,
    spherical_gradient_h,
    xi_dot_gradient,
)
from dunklops.poly import MultiPoly, SphereFunction

from conftest import rand_poly


def var(d, i):
    return MultiPoly.variable(d, i)


@pytest.fixture
def ctx2():
    return OperatorContext.for_system(RootSystem.z2d([Q(1), Q(2)]))


@pytest.fixture
def ctx_swap():
    return OperatorContext.for_system(RootSystem.general(2, [((1, -1), 1)]))


def test_difference_op_examples(ctx2, ctx_swap):
    x1, x2 = var(2, 0), var(2, 1)
    e1 = ctx2.root_system.positive_roots[0]
    assert difference_op_E(ctx2, e1, x1) == MultiPoly.constant(2, 2)
    assert difference_op_E(ctx2, e1, MultiPoly.norm_squared(2)).is_zero()
    r = ctx_swap.root_system.positive_roots[0]
    assert difference_op_E(ctx_swap, r, x1 * x1) == x1 + x2
    with pytest.raises(ValueError):
        difference_op_E(ctx2, r, x1)


def test_difference_op_lowers_degree(ctx_swap, rng):
    r = ctx_swap.root_system.positive_roots[0]
    for _ in range(5):
        f = rand_poly(rng, 2, 5)
        for n, part in f.homogeneous_parts():
            out = difference_op_E(ctx_swap, r, part)
            assert out.is_zero() or out.degree == n - 1


def test_dunkl_examples(ctx2):
    x1, x2 = var(2, 0), var(2, 1)
    assert dunkl(ctx2, 0, x1) == MultiPoly.constant(2, 3)  # 1 + 2*kappa_1
    assert dunkl(ctx2, 0, MultiPoly.one(2)).is_zero()
    assert dunkl(ctx2, 0, x2).is_zero()


def test_dunkl_degree_grading(ctx2, rng):
    for _ in range(5):
        f = rand_poly(rng, 2, 5)
        for n, part in f.homogeneous_parts():
            out = dunkl(ctx2, 0, part)
            assert out.is_zero() or (out.is_homogeneous() and out.degree == n - 1)


def test_dunkl_commutativity(ctx2, ctx_swap, rng):
    for ctx in (ctx2, ctx_swap):
        for _ in range(5):
            f = rand_poly(rng, 2, 6)
            assert dunkl(ctx, 0, dunkl(ctx, 1, f)) == dunkl(ctx, 1, dunkl(ctx, 0, f))


def test_gradient_matches_componentwise(ctx2, rng):
    f = rand_poly(rng, 2, 5)
    grad = dunkl_gradient(ctx2, f)
    assert grad[0] == dunkl(ctx2, 0, f)
    assert grad[1] == dunkl(ctx2, 1, f)


def test_h_laplacian_norm_squared(ctx2):
    lam = ctx2.lam
    assert h_laplacian(ctx2, MultiPoly.norm_squared(2)) == MultiPoly.constant(
        2, 4 * (lam + 1)
    )
    assert h_laplacian(ctx2, MultiPoly.one(2)).is_zero()


def test_classical_harmonic():
    ctx0 = OperatorContext.trivial(2)
    assert h_laplacian(ctx0, var(2, 0) * var(2, 1)).is_zero()


def test_explicit_laplacian_agreement(ctx2, ctx_swap, rng):
    for ctx in (ctx2, ctx_swap):
        for _ in range(5):
            f = rand_poly(rng, 2, 5)
            assert h_laplacian(ctx, f) == h_laplacian_explicit(ctx, f)


def test_angular_examples(ctx2):
    x1, x2 = var(2, 0), var(2, 1)
    assert angular_classical(0, 1, x1) == -x2
    assert angular_classical(0, 1, MultiPoly.norm_squared(2)).is_zero()
    # x1 D2 x2 - x2 D1 x2 with D2 x2 = 1 + 2 kappa_2
    assert angular_dunkl(ctx2, 0, 1, x2) == x1.scale(5)
    with pytest.raises(ValueError):
        angular_classical(1, 1, x1)


def test_angular_decomposition(ctx2, ctx_swap, rng):
    for ctx in (ctx2, ctx_swap):
        for _ in range(5):
            f = rand_poly(rng, 2, 5)
            assert angular_dunkl(ctx, 0, 1, f) == angular_classical(0, 1, f) + angular_difference(
                ctx, 0, 1, f
            )


def test_spherical_gradient_classical_example():
    d = 3
    x1, x2, x3 = (var(d, i) for i in range(d))
    g = spherical_gradient_classical(x3.reduce_mod_sphere())
    expected = [-x1 * x3, -x2 * x3, MultiPoly.one(d) - x3**2]
    assert list(g) == [e.reduce_mod_sphere() for e in expected]
    zero = spherical_gradient_classical(MultiPoly.one(d).reduce_mod_sphere())
    assert all(c.is_zero() for c in zero)


def test_xi_dot_gradient_examples():
    ctx10 = OperatorContext.for_system(RootSystem.z2d([1, 0]))
    ctx0 = OperatorContext.trivial(2)
    x1 = var(2, 0)
    sf = x1.reduce_mod_sphere()
    assert xi_dot_gradient(ctx10, sf) == x1.scale(2).reduce_mod_sphere()
    assert xi_dot_gradient(ctx0, sf).is_zero()
    assert xi_dot_gradient(ctx10, MultiPoly.norm_squared(2).reduce_mod_sphere()).is_zero()


def test_invariant_input_kills_radial_part(ctx2, rng):
    # group-invariant functions have tangential h-gradient
    f = MultiPoly(2, {e: c for e, c in rand_poly(rng, 2, 6, 10).terms.items()
                      if all(k % 2 == 0 for k in e)})
    sf = f.reduce_mod_sphere()
    assert is_group_invariant(ctx2, sf)
    assert xi_dot_gradient(ctx2, sf).is_zero()
    gh = spherical_gradient_h(ctx2, sf)
    g0 = spherical_gradient_classical(sf)
    assert list(gh) == list(g0)


def test_laplace_beltrami_examples():
    ctx03 = OperatorContext.trivial(3)
    x1, x2 = var(3, 0), var(3, 1)
    f = (x1 * x2).reduce_mod_sphere()
    assert laplace_beltrami_h(ctx03, f) == f.scale(-6)
    assert laplace_beltrami_h(ctx03, MultiPoly.one(3).reduce_mod_sphere()).is_zero()


def test_representative_independence(rng):
    ctx = OperatorContext.for_system(RootSystem.z2d([Q(1, 2), 1, Q(3, 4)]))
    ns = MultiPoly.norm_squared(3)
    for _ in range(4):
        f = rand_poly(rng, 3, 4)
        lifted = f + (ns - 1) * rand_poly(rng, 3, 3)
        a, b = f.reduce_mod_sphere(), lifted.reduce_mod_sphere()
        assert a == b
        assert laplace_beltrami_h(ctx, a) == laplace_beltrami_h(ctx, b)
        assert list(spherical_gradient_h(ctx, a)) == list(spherical_gradient_h(ctx, b))


@pytest.mark.parametrize(
    "rs",
    [
        RootSystem.z2d([Q(1, 2), Q(3, 4)]),
        RootSystem.general(2, [((1, -1), 1)]),
        RootSystem.general(2, [((1, 0), 1), ((0, 1), 1), ((1, -1), 2), ((1, 1), 2)]),
    ],
    ids=["z2d", "swap", "b2"],
)
def test_radial_pairing_identity(rs, rng):
    # xi . grad_S f equals the multiplicity-weighted reflection differences
    ctx = OperatorContext.for_system(rs)
    d = ctx.dimension
    for _ in range(3):
        f = rand_poly(rng, d, 5).reduce_mod_sphere()
        grads = spherical_gradient_h(ctx, f)
        acc = MultiPoly.zero(d)
        for i in range(d):
            acc = acc + var(d, i) * grads[i].rep
        assert SphereFunction.from_poly(acc) == xi_dot_gradient(ctx, f)


def test_divergence_form_identity(rng):
    ctx = OperatorContext.for_system(RootSystem.z2d([Q(1, 2), Q(3, 4), 1]))
    d = 3
    for _ in range(3):
        f = rand_poly(rng, d, 4).reduce_mod_sphere()
        grads = spherical_gradient_h(ctx, f)
        div = MultiPoly.zero(d)
        for j in range(d):
            div = div + spherical_gradient_h(ctx, grads[j])[j].rep
        lhs = SphereFunction.from_poly(div) - xi_dot_gradient(ctx, f)
        assert lhs == laplace_beltrami_h(ctx, f)


def test_root_scaling_leaves_operators_unchanged(rng):
    base = RootSystem.general(2, [((1, -1), 2)])
    doubled = RootSystem.general(2, [((2, -2), 2)])
    c1 = OperatorContext.for_system(base)
    c2 = OperatorContext.for_system(doubled)
    for _ in range(5):
        f = rand_poly(rng, 2, 5)
        for j in range(2):
            assert dunkl(c1, j, f) == dunkl(c2, j, f)
        assert h_laplacian(c1, f) == h_laplacian(c2, f)
