from fractions import Fraction as Q

import pytest

from dunklops.groups import RootSystem
from dunklops.harmonics import (
    harmonic_components,
    harmonic_decompose,
    is_h_harmonic,
    neg_laplacian_power,
    parseval_norm_sq,
    proj,
    sobolev_half_norm_sq,
)
from dunklops.operators import (
    OperatorContext,
    laplace_beltrami_h,
    spherical_gradient_h,
)
from dunklops.poly import MultiPoly, SphereFunction
from dunklops.quadrature import WeightedDomain, integrate_sphere

from conftest import rand_poly


@pytest.fixture
def ctxk():
    return OperatorContext.for_system(RootSystem.z2d([Q(1, 2), 1, Q(3, 4)]))


@pytest.fixture
def dom(ctxk):
    return WeightedDomain.sphere(ctxk.root_system)


def test_decompose_norm_squared():
    ctx0 = OperatorContext.trivial(3)
    ns = MultiPoly.norm_squared(3)
    assert harmonic_decompose(ctx0, ns) == [(1, MultiPoly.one(3))]


def test_decompose_x1_squared():
    ctx0 = OperatorContext.trivial(3)
    x1 = MultiPoly.variable(3, 0)
    ns = MultiPoly.norm_squared(3)
    dec = dict(harmonic_decompose(ctx0, x1 * x1))
    assert dec[0] == x1 * x1 - ns.scale(Q(1, 3))
    assert dec[1] == MultiPoly.constant(3, Q(1, 3))


def test_decompose_harmonic_passthrough():
    ctx0 = OperatorContext.trivial(3)
    p = MultiPoly.variable(3, 0) * MultiPoly.variable(3, 1)
    assert harmonic_decompose(ctx0, p) == [(0, p)]


def test_decompose_reconstruction(ctxk, rng):
    ns = MultiPoly.norm_squared(3)
    for _ in range(5):
        f = rand_poly(rng, 3, 6)
        for m, part in f.homogeneous_parts():
            rec = MultiPoly.zero(3)
            for j, comp in harmonic_decompose(ctxk, part):
                assert is_h_harmonic(ctxk, comp)
                rec = rec + ns**j * comp
            assert rec == part


def test_eigen_relation(ctxk, rng):
    lam = ctxk.lam
    for _ in range(4):
        f = rand_poly(rng, 3, 6).reduce_mod_sphere()
        for n, comp in harmonic_components(ctxk, f).items():
            sf = SphereFunction.from_poly(comp)
            assert laplace_beltrami_h(ctxk, sf) == sf.scale(-Q(n) * (n + 2 * lam))


def test_orthogonality_and_parseval(ctxk, dom, rng):
    for _ in range(4):
        f = rand_poly(rng, 3, 5).reduce_mod_sphere()
        comps = harmonic_components(ctxk, f)
        degs = sorted(comps)
        for i in range(len(degs)):
            for j in range(i + 1, len(degs)):
                assert integrate_sphere(dom, comps[degs[i]] * comps[degs[j]]) == 0
        assert parseval_norm_sq(ctxk, f) == integrate_sphere(dom, f.rep * f.rep)


def test_proj_examples(ctxk):
    c = MultiPoly.constant(3, Q(5)).reduce_mod_sphere()
    assert proj(ctxk, c, 0) == MultiPoly.constant(3, 5)
    assert proj(ctxk, c, 1).is_zero()
    ctx0 = OperatorContext.trivial(3)
    x1 = MultiPoly.variable(3, 0)
    f = (x1 * x1).reduce_mod_sphere()
    assert proj(ctx0, f, 0) == MultiPoly.constant(3, Q(1, 3))
    assert proj(ctx0, f, 2) == x1 * x1 - MultiPoly.norm_squared(3).scale(Q(1, 3))


def test_proj_completeness(ctxk, rng):
    for _ in range(4):
        f = rand_poly(rng, 3, 5).reduce_mod_sphere()
        total = MultiPoly.zero(3)
        for comp in harmonic_components(ctxk, f).values():
            total = total + comp
        assert SphereFunction.from_poly(total) == f


def test_proj_idempotent_and_self_adjoint(ctxk, dom, rng):
    f = rand_poly(rng, 3, 5).reduce_mod_sphere()
    g = rand_poly(rng, 3, 5).reduce_mod_sphere()
    for n in range(6):
        pf = proj(ctxk, f, n)
        if not pf.is_zero():
            assert proj(ctxk, SphereFunction.from_poly(pf), n) == pf
        assert integrate_sphere(dom, pf * g.rep) == integrate_sphere(
            dom, f.rep * proj(ctxk, g, n)
        )


def test_neg_laplacian_power(ctxk, dom, rng):
    lam = ctxk.lam
    f = rand_poly(rng, 3, 5).reduce_mod_sphere()
    mean = integrate_sphere(dom, f)
    fz = SphereFunction.from_poly(f.rep - MultiPoly.constant(3, mean))
    assert neg_laplacian_power(ctxk, fz, 0) == fz
    assert neg_laplacian_power(ctxk, fz, 1) == -laplace_beltrami_h(ctxk, fz)
    comp = proj(ctxk, f, 2)
    if not comp.is_zero():
        sc = SphereFunction.from_poly(comp)
        eig = Q(2) * (2 + 2 * lam)
        assert neg_laplacian_power(ctxk, sc, 2) == sc.scale(eig**2)
    with pytest.raises(ValueError):
        neg_laplacian_power(ctxk, fz, Q(1, 2))
    # negative power inverts the spectrum on the mean-zero part
    inv = neg_laplacian_power(ctxk, fz, -1)
    assert neg_laplacian_power(ctxk, inv, 1) == fz


def test_sobolev_half_norm(ctxk, dom, rng):
    assert sobolev_half_norm_sq(ctxk, MultiPoly.one(3).reduce_mod_sphere()) == 0
    lam = ctxk.lam
    # single eigenspace: unit-normalized harmonic gives n(n + 2 lam)
    x1x2 = MultiPoly.variable(3, 0) * MultiPoly.variable(3, 1)
    h = proj(ctxk, x1x2.reduce_mod_sphere(), 2)
    nsq = integrate_sphere(dom, h * h)
    assert sobolev_half_norm_sq(ctxk, SphereFunction.from_poly(h)) == Q(2) * (2 + 2 * lam) * nsq


def test_invariant_gradient_norm_equality(ctxk, dom, rng):
    # half-power norm equals the h-gradient norm exactly on invariant input
    for _ in range(4):
        f = MultiPoly(
            3,
            {e: c for e, c in rand_poly(rng, 3, 6, 12).terms.items()
             if all(k % 2 == 0 for k in e)},
        )
        if f.is_zero():
            continue
        sf = f.reduce_mod_sphere()
        lhs = sobolev_half_norm_sq(ctxk, sf)
        grads = spherical_gradient_h(ctxk, sf)
        rhs = sum((integrate_sphere(dom, c.rep * c.rep) for c in grads), Q(0))
        assert lhs == rhs


def test_tier_b_harmonics():
    # decomposition also works over a non-diagonal reflection group
    ctx = OperatorContext.for_system(RootSystem.general(2, [((1, -1), 1)]))
    dom = WeightedDomain.sphere(ctx.root_system)
    x1, x2 = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
    f = (x1 * x1 * x2).reduce_mod_sphere()
    comps = harmonic_components(ctx, f)
    total = MultiPoly.zero(2)
    for n, comp in comps.items():
        sf = SphereFunction.from_poly(comp)
        assert laplace_beltrami_h(ctx, sf) == sf.scale(-Q(n) * (n + 2 * ctx.lam))
        total = total + comp
    assert SphereFunction.from_poly(total) == f
    assert parseval_norm_sq(ctx, f) == integrate_sphere(dom, f.rep * f.rep)
