import math
from fractions import Fraction as Q

import pytest

from dunklops.errors import AdmissibilityError, DegenerateInputError
from dunklops.groups import RootSystem
from dunklops.operators import OperatorContext
from dunklops.poly import MultiPoly
from dunklops.quadrature import WeightedDomain, integrate_sphere
from dunklops.uncertainty import (
    axis_product_bound_holds,
    ball_uncertainty,
    constant_C,
    first_moment_identity_residuals,
    gradient_lower_bound_holds,
    localization_bound_holds,
    make_admissible,
    product_meets_constant,
    simplex_uncertainty,
    sphere_uncertainty,
)

from conftest import rand_poly


def var(d, i):
    return MultiPoly.variable(d, i)


def test_constant_values():
    assert abs(constant_C(Q(1, 2)) - (1 - 1 / math.sqrt(2))) < 1e-12
    assert constant_C(0) == 0.0
    golden = 2 * (1 - math.sqrt(2) / math.sqrt(17 / 4))
    assert abs(constant_C(1) - golden) < 1e-12
    assert constant_C(Q(7, 2)) > constant_C(1) > 0
    with pytest.raises(ValueError):
        constant_C(-1)


def test_product_meets_constant_is_exact():
    # C(1/2) = 1 - 1/sqrt(2) ~ 0.29289
    assert product_meets_constant(Q(3, 10), Q(1, 2)) is True
    assert product_meets_constant(Q(29, 100), Q(1, 2)) is False
    assert product_meets_constant(Q(2928932, 10**7), Q(1, 2)) is False
    assert product_meets_constant(Q(2928933, 10**7), Q(1, 2)) is True
    assert product_meets_constant(0.5, Q(1, 2)) is None


def test_make_admissible():
    dom = WeightedDomain.sphere(RootSystem.z2d([0, 0, 0]))
    x1 = var(3, 0)
    adm = make_admissible(dom, x1)
    assert adm.mean == 0 and adm.norm_sq == Q(1, 3)
    adm2 = make_admissible(dom, x1 * x1)
    assert adm2.mean == Q(1, 3)
    assert integrate_sphere(dom, adm2.centered) == 0
    with pytest.raises(DegenerateInputError):
        make_admissible(dom, MultiPoly.one(3))


def test_sphere_pipeline_classical():
    ctx = OperatorContext.trivial(3)
    dom = WeightedDomain.sphere(ctx.root_system)
    adm = make_admissible(dom, var(3, 0) ** 2)
    res = sphere_uncertainty(ctx, adm)
    assert res.margin_nonneg and res.margin_exact
    assert 0 < res.localization < 2
    assert res.gradient_sq == 6  # grad of normalized x1^2 - 1/3
    assert abs(res.constant - constant_C(Q(1, 2))) < 1e-15
    assert not res.trivially_true


def test_sphere_weighted_invariant():
    ctx = OperatorContext.for_system(RootSystem.z2d([1, 1, 1]))
    dom = WeightedDomain.sphere(ctx.root_system)
    f = MultiPoly(3, {(2, 0, 0): Q(2), (0, 2, 0): Q(-1), (0, 0, 4): Q(3)})
    res = sphere_uncertainty(ctx, make_admissible(dom, f))
    assert res.margin_nonneg and res.margin_exact
    assert res.admissible_flags["invariant"] is True
    assert abs(res.constant - constant_C(Q(7, 2))) < 1e-15


def test_sphere_nontrivial_localization():
    # swap-invariant mixed-parity input makes the axis terms nontrivial
    ctx = OperatorContext.for_system(RootSystem.general(2, [((1, -1), 1)]))
    dom = WeightedDomain.sphere(ctx.root_system)
    x, y = var(2, 0), var(2, 1)
    adm = make_admissible(dom, (x + y) + (x + y) ** 2)
    res = sphere_uncertainty(ctx, adm)
    assert res.localization != 1
    assert res.margin_nonneg and res.margin_exact


def test_sphere_invariance_warning_flag():
    ctx = OperatorContext.for_system(RootSystem.z2d([1, 0, 0]))
    dom = WeightedDomain.sphere(ctx.root_system)
    adm = make_admissible(dom, var(3, 0))  # odd in x1: not invariant
    res = sphere_uncertainty(ctx, adm)
    assert res.admissible_flags["invariant"] is False
    assert res.admissible_flags["invariance_residual"] > 0


def test_sphere_rejects_non_admissible():
    ctx = OperatorContext.trivial(3)
    with pytest.raises(AdmissibilityError):
        sphere_uncertainty(ctx, var(3, 0).reduce_mod_sphere())


def test_sign_flip_covariance():
    ctx = OperatorContext.trivial(3)
    dom = WeightedDomain.sphere(ctx.root_system)
    f = var(3, 0) ** 2
    a = sphere_uncertainty(ctx, make_admissible(dom, f))
    b = sphere_uncertainty(ctx, make_admissible(dom, f.scale(-1)))
    assert a.as_record() == b.as_record()


def test_trivial_constant_flag():
    # d = 2 with zero multiplicities has lam = 0 and constant 0
    ctx = OperatorContext.trivial(2)
    dom = WeightedDomain.sphere(ctx.root_system)
    res = sphere_uncertainty(ctx, make_admissible(dom, var(2, 0)))
    assert res.trivially_true and res.constant == 0.0 and res.margin_nonneg


def test_proof_chain_checks(rng):
    ctx = OperatorContext.for_system(RootSystem.general(2, [((1, -1), 1)]))
    dom = WeightedDomain.sphere(ctx.root_system)
    x, y = var(2, 0), var(2, 1)
    adm = make_admissible(dom, (x + y) + 2 * (x * y))
    ok, grad_sq, sob = gradient_lower_bound_holds(ctx, adm)
    assert ok and grad_sq == sob and grad_sq >= 2 * ctx.lam
    assert localization_bound_holds(dom, adm)
    assert axis_product_bound_holds(ctx, adm)
    for _ in range(5):
        f = rand_poly(rng, 2, 4).reduce_mod_sphere()
        assert all(r == 0 for r in first_moment_identity_residuals(ctx, f))


def test_ball_axes_mode():
    dom = WeightedDomain.ball(RootSystem.z2d([1, Q(1, 2)]), Q(3, 4))
    f = MultiPoly(2, {(2, 0): Q(3), (0, 2): Q(-2), (2, 2): Q(1)})
    res = ball_uncertainty(dom, make_admissible(dom, f), "invariant-axes")
    assert res.margin_nonneg and res.margin_exact
    lam = Q(3, 2) + Q(3, 4) + Q(1, 2)
    assert abs(res.constant - constant_C(lam)) < 1e-15


def test_ball_axes_requires_invariance():
    dom = WeightedDomain.ball(RootSystem.z2d([1, 0]), Q(1, 2))
    adm = make_admissible(dom, var(2, 0))
    with pytest.raises(AdmissibilityError):
        ball_uncertainty(dom, adm, "invariant-axes")


def test_ball_zero_kappa_axis_mode_allows_odd_input():
    # with zero multiplicities the effective group is trivial
    dom = WeightedDomain.ball(RootSystem.z2d([0, 0]), Q(1, 2))
    res = ball_uncertainty(dom, make_admissible(dom, var(2, 0)), "invariant-axes")
    assert res.margin_nonneg and res.margin_exact
    assert abs(res.constant - constant_C(1)) < 1e-15  # lam = 0 + 1/2 + 1/2


def test_ball_directions_mode(rng):
    dom = WeightedDomain.ball(RootSystem.z2d([0, 0]), Q(1, 2))
    for _ in range(5):
        f = rand_poly(rng, 2, 3)
        try:
            adm = make_admissible(dom, f)
        except DegenerateInputError:
            continue
        res = ball_uncertainty(dom, adm, "classical-directions", direction_samples=16, seed=5)
        assert res.margin_nonneg
    with pytest.raises(AdmissibilityError):
        dom_w = WeightedDomain.ball(RootSystem.z2d([1, 0]), Q(1, 2))
        ball_uncertainty(dom_w, make_admissible(dom_w, var(2, 0)), "classical-directions")


def test_corollary_mode_halved_constant():
    dom = WeightedDomain.ball(RootSystem.z2d([0, 0]), Q(1, 2))
    x1, x2 = var(2, 0), var(2, 1)
    adm = make_admissible(dom, x1 * x1 - x2 * x2)
    full = ball_uncertainty(dom, adm, "classical-directions", direction_samples=8, seed=1)
    half = ball_uncertainty(dom, adm, "corollary54", direction_samples=8, seed=1)
    assert half.margin_nonneg and full.margin_nonneg
    assert abs(half.constant - full.constant / 2) < 1e-15
    # the factor-2 comparison integrated: 2 * (corollary term) >= triple norm
    assert 2 * float(half.gradient_sq) >= float(full.gradient_sq) - 1e-12


def test_simplex_jacobi_1d():
    dom = WeightedDomain.simplex(RootSystem.z2d([Q(1, 2)]), Q(1, 2))
    x = var(1, 0)
    res = simplex_uncertainty(dom, make_admissible(dom, x), "jacobi")
    assert res.margin_nonneg and res.margin_exact
    # uniform weight on [0, 1]: f - mean = x - 1/2, norm^2 = 1/12;
    # gradient term: int x(1-x) dx / (1/12) = (1/6)/(1/12) = 2 and
    # localization: 1 - int sqrt(x)(x-1/2)^2 dx / (1/12) = 1 - (11/210)*12
    assert res.gradient_sq == 2
    assert res.localization == Q(13, 35)
    lam = Q(1, 2) + Q(1, 2) + 0
    assert abs(res.constant - constant_C(lam) / 4) < 1e-15


def test_simplex_jacobi_2d_exact():
    dom = WeightedDomain.simplex(RootSystem.z2d([Q(1, 2), Q(1, 2)]), Q(1, 2))
    x, y = var(2, 0), var(2, 1)
    res = simplex_uncertainty(dom, make_admissible(dom, x + 2 * y * y), "jacobi")
    assert res.margin_nonneg and res.margin_exact
    assert isinstance(res.localization, Q)


def test_simplex_irrational_localization_still_decided():
    dom = WeightedDomain.simplex(RootSystem.z2d([Q(1, 2)]), Q(1, 4))
    x = var(1, 0)
    res = simplex_uncertainty(dom, make_admissible(dom, x), "jacobi")
    assert res.margin_nonneg and not res.margin_exact


def test_simplex_symmetric_mode():
    b2 = RootSystem.general(2, [((1, 0), 1), ((0, 1), 1), ((1, -1), 1), ((1, 1), 1)])
    dom = WeightedDomain.simplex(b2, 1)
    x, y = var(2, 0), var(2, 1)
    fsym = x + y + 3 * (x * y)
    res = simplex_uncertainty(dom, make_admissible(dom, fsym), "hyperoctahedral-symmetric")
    assert res.margin_nonneg
    with pytest.raises(AdmissibilityError):
        simplex_uncertainty(dom, make_admissible(dom, x), "hyperoctahedral-symmetric")


def test_localization_in_open_interval():
    from dunklops.groups import generate_group
    from dunklops.verify import sample_polynomial

    ctx = OperatorContext.for_system(RootSystem.general(2, [((1, -1), 1)]))
    dom = WeightedDomain.sphere(ctx.root_system)
    group = generate_group(ctx.root_system)
    for t in range(10):
        f = sample_polynomial(1000 + t, 2, 4, invariant_group=group)
        try:
            adm = make_admissible(dom, f.reduce_mod_sphere())
        except DegenerateInputError:
            continue
        res = sphere_uncertainty(ctx, adm)
        assert 0 < res.localization < 2
        assert res.margin_nonneg
