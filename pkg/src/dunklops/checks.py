"""The data-driven check registry behind the verification CLI.

Every check verifies one identity, inequality or consistency property on
randomized polynomial inputs, with exact rational equality unless stated
otherwise in its description. Check ids are stable and keyed to the
equation catalog printed by ``verify coverage``; failures persist the full
rational witness polynomial and the seed that produced it.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction as Q

from .domains import (
    angular_sq_sum,
    ball_eigenvalue,
    ball_triple_norm_sq,
    d_kappa_mu,
    gradient_sq_sum,
    gram_schmidt,
    lambda_ball,
    lift_to_sphere,
    partial_gradient_bound_gap,
    pullback_simplex,
    simplex_triple_norm_sq,
    x_dot_grad,
)
from .groups import (
    KIND_Z2D,
    RootSystem,
    signed_permutation_group,
)
from .harmonics import (
    harmonic_components,
    harmonic_decompose,
    is_h_harmonic,
    neg_laplacian_power,
    parseval_norm_sq,
    proj,
    sobolev_half_norm_sq,
)
from .operators import (
    OperatorContext,
    angular_classical,
    angular_difference,
    angular_dunkl,
    dunkl,
    dunkl_gradient,
    h_laplacian,
    h_laplacian_explicit,
    laplace_beltrami_h,
    spherical_gradient_classical,
    spherical_gradient_h,
    xi_dot_gradient,
)
from .poly import MultiPoly, SphereFunction, format_poly
from .quadrature import (
    WeightedDomain,
    integrate_ball,
    integrate_simplex,
    integrate_simplex_sqrt_axis,
    integrate_sphere,
    mc_integrate,
    mc_integrate_simplex_direct,
    sphere_monomial_integral,
)
from .uncertainty import (
    axis_product_bound_holds,
    ball_uncertainty,
    constant_C,
    first_moment_identity_residuals,
    gradient_lower_bound_holds,
    localization_bound_holds,
    make_admissible,
    simplex_uncertainty,
    sphere_uncertainty,
)
from .verify import Check, CheckEnv, CheckOutcome, skipped, trial_loop

EQUATIONS = (
    "2.2", "2.3", "2.4", "2.5", "2.8", "2.9",
    "3.1", "3.2", "3.3", "3.4", "3.6", "3.7", "3.8", "3.9",
    "3.10", "3.11", "3.12", "3.13",
    "4.1", "4.2", "4.3", "4.4",
    "5.1", "5.2", "5.3", "5.4", "5.5",
    "6.2", "6.3", "6.4",
)


def _sf(p: MultiPoly) -> SphereFunction:
    return p.reduce_mod_sphere()


def _wit(p: MultiPoly, msg: str):
    return (format_poly(p), msg)


# -- identities ----------------------------------------------------------------


def check_eq_2_2(env: CheckEnv) -> CheckOutcome:
    ctx0 = env.ctx0
    d = env.dimension

    def body(t, seed):
        f = _sf(env.sample(seed))
        acc = MultiPoly.zero(d)
        for i in range(d):
            for j in range(i + 1, d):
                acc = acc + angular_classical(i, j, _sf(angular_classical(i, j, f.rep)).rep)
        if SphereFunction.from_poly(acc) != laplace_beltrami_h(ctx0, f):
            return _wit(f.rep, "sum of squared angular derivatives != spherical Laplacian")
        return None

    return trial_loop(env, "eq-2.2", body)


def check_eq_2_3(env: CheckEnv) -> CheckOutcome:
    d = env.dimension

    def body(t, seed):
        f = _sf(env.sample(seed))
        g = _sf(env.sample(seed + 1))
        gf = spherical_gradient_classical(f)
        gg = spherical_gradient_classical(g)
        lhs = MultiPoly.zero(d)
        for a, b in zip(gf, gg):
            lhs = lhs + a.rep * b.rep
        rhs = MultiPoly.zero(d)
        for i in range(d):
            for j in range(i + 1, d):
                rhs = rhs + angular_classical(i, j, f.rep) * angular_classical(i, j, g.rep)
        if SphereFunction.from_poly(lhs) != SphereFunction.from_poly(rhs):
            return _wit(f.rep, "gradient pairing != angular derivative pairing")
        return None

    return trial_loop(env, "eq-2.3", body)


def check_eq_2_4(env: CheckEnv) -> CheckOutcome:
    d = env.dimension
    dom0 = WeightedDomain.sphere(RootSystem.z2d([0] * d))

    def body(t, seed):
        f = _sf(env.sample(seed))
        g = _sf(env.sample(seed + 1))
        for i in range(d):
            for j in range(i + 1, d):
                lhs = integrate_sphere(dom0, angular_classical(i, j, f.rep) * g.rep)
                rhs = integrate_sphere(dom0, f.rep * angular_classical(i, j, g.rep))
                if lhs + rhs != 0:
                    return _wit(f.rep, f"surface integration by parts failed for pair ({i},{j})")
        return None

    return trial_loop(env, "eq-2.4", body)


def check_eq_2_5(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    lam = ctx.lam
    ns = MultiPoly.norm_squared(env.dimension)

    def body(t, seed):
        f = env.sample(seed)
        for m, part in f.homogeneous_parts():
            lhs = h_laplacian(ctx, ns * part)
            rhs = ns * h_laplacian(ctx, part) + part.scale(4 * (m + lam + 1))
            if lhs != rhs:
                return _wit(part, "radial commutation of the h-Laplacian failed")
        return None

    return trial_loop(env, "eq-2.5", body)


def check_eq_3_1(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    d = env.dimension

    def body(t, seed):
        f = env.sample(seed)
        for m, part in f.homogeneous_parts():
            lhs = MultiPoly.zero(d)
            grad = dunkl_gradient(ctx, part)
            for i in range(d):
                lhs = lhs + MultiPoly.variable(d, i) * grad[i]
            rhs = part.scale(m)
            for root, sigma in ctx.reflections():
                if root.multiplicity != 0:
                    rhs = rhs + (part - part.compose_linear(sigma)).scale(root.multiplicity)
            if lhs != rhs:
                return _wit(part, "Euler relation for the Dunkl gradient failed")
        return None

    return trial_loop(env, "eq-3.1", body)


def check_eq_3_2(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    d = env.dimension

    def body(t, seed):
        f = _sf(env.sample(seed))
        gh = spherical_gradient_h(ctx, f)
        g0 = spherical_gradient_classical(f)
        for j in range(d):
            rhs = g0[j].rep
            for root, sigma in ctx.reflections():
                kv = root.multiplicity * root.vector[j]
                if kv != 0:
                    ev = (f.rep - f.rep.compose_linear(sigma)).divide_by_linear(root.vector)
                    rhs = rhs + ev.scale(kv)
            if gh[j] != SphereFunction.from_poly(rhs):
                return _wit(f.rep, f"difference-part split of component {j} failed")
        return None

    return trial_loop(env, "eq-3.2", body)


def check_eq_3_3(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    d = env.dimension

    def body(t, seed):
        f = _sf(env.sample(seed))
        grads = spherical_gradient_h(ctx, f)
        acc = MultiPoly.zero(d)
        for i in range(d):
            acc = acc + MultiPoly.variable(d, i) * grads[i].rep
        if SphereFunction.from_poly(acc) != xi_dot_gradient(ctx, f):
            return _wit(f.rep, "radial pairing of the spherical gradient failed")
        return None

    return trial_loop(env, "eq-3.3", body)


def check_eq_3_4(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    d = env.dimension

    def body(t, seed):
        f = _sf(env.sample(seed))
        grads = spherical_gradient_h(ctx, f)
        div = MultiPoly.zero(d)
        for j in range(d):
            div = div + spherical_gradient_h(ctx, grads[j])[j].rep
        lhs = SphereFunction.from_poly(div) - xi_dot_gradient(ctx, f)
        if lhs != laplace_beltrami_h(ctx, f):
            return _wit(f.rep, "divergence form of the spherical h-Laplacian failed")
        return None

    return trial_loop(env, "eq-3.4", body)


def check_eq_3_6(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    d = env.dimension

    def body(t, seed):
        f = env.sample(seed)
        for i in range(d):
            for j in range(i + 1, d):
                lhs = angular_dunkl(ctx, i, j, f)
                rhs = angular_classical(i, j, f) + angular_difference(ctx, i, j, f)
                if lhs != rhs:
                    return _wit(f, f"angular decomposition failed for pair ({i},{j})")
        return None

    return trial_loop(env, "eq-3.6", body)


def check_eq_3_7(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    dom = env.sphere_dom
    d = env.dimension
    if not env.tier_allowed(env.exact_tier()):
        return skipped(f"exact tier {env.exact_tier()} disabled in config")

    def body(t, seed):
        f = _sf(env.sample(seed))
        g = _sf(env.sample(seed + 1))
        for i in range(d):
            for j in range(i + 1, d):
                lhs = integrate_sphere(dom, angular_dunkl(ctx, i, j, f.rep) * g.rep)
                rhs = integrate_sphere(dom, f.rep * angular_dunkl(ctx, i, j, g.rep))
                if lhs + rhs != 0:
                    return _wit(f.rep, f"weighted integration by parts failed for ({i},{j})")
        return None

    return trial_loop(env, "eq-3.7", body)


def check_eq_3_8(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    d = env.dimension

    def body(t, seed):
        f = _sf(env.sample(seed))
        grads = spherical_gradient_h(ctx, f)
        xd = xi_dot_gradient(ctx, f)
        for j in range(d):
            rhs = MultiPoly.zero(d)
            for i in range(d):
                if i != j:
                    rhs = rhs + MultiPoly.variable(d, i) * angular_dunkl(ctx, i, j, f.rep)
            rhs = rhs + MultiPoly.variable(d, j) * xd.rep
            if grads[j] != SphereFunction.from_poly(rhs):
                return _wit(f.rep, f"angular expansion of gradient component {j} failed")
        return None

    return trial_loop(env, "eq-3.8", body)


def check_eq_3_9(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    d = env.dimension

    def body(t, seed):
        f = env.sample(seed)
        for i in range(d):
            for j in range(d):
                xj = MultiPoly.variable(d, j)
                lhs = dunkl(ctx, i, xj * f)
                rhs = xj * dunkl(ctx, i, f)
                if i == j:
                    rhs = rhs + f
                for root, sigma in ctx.reflections():
                    c = 2 * root.multiplicity * root.vector[i] * root.vector[j] / root.norm_sq
                    if c != 0:
                        rhs = rhs + f.compose_linear(sigma).scale(c)
                if lhs != rhs:
                    return _wit(f, f"coordinate product rule failed for ({i},{j})")
        return None

    return trial_loop(env, "eq-3.9", body)


def check_eq_3_10(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    dom = env.sphere_dom
    d = env.dimension
    lam = ctx.lam
    if not env.tier_allowed(env.exact_tier()):
        return skipped(f"exact tier {env.exact_tier()} disabled in config")

    def body(t, seed):
        f = _sf(env.sample(seed))
        g = _sf(env.sample(seed + 1))
        gf = spherical_gradient_h(ctx, f)
        gg = spherical_gradient_h(ctx, g)
        for j in range(d):
            xj = MultiPoly.variable(d, j)
            lhs = integrate_sphere(dom, gf[j].rep * g.rep)
            rhs = -integrate_sphere(dom, f.rep * (gg[j].rep - (xj * g.rep).scale(2 * lam + 1)))
            if lhs != rhs:
                return _wit(f.rep, f"adjoint formula failed in component {j}")
        return None

    return trial_loop(env, "eq-3.10", body)


def check_lemma_3_7(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    d = env.dimension
    gamma = ctx.constants.gamma_kappa

    def body(t, seed):
        g = _sf(env.sample(seed))
        grads = spherical_gradient_h(ctx, g)
        for j in range(d):
            lhs = MultiPoly.zero(d)
            for i in range(d):
                if i != j:
                    lhs = lhs + angular_dunkl(ctx, i, j, MultiPoly.variable(d, i) * g.rep)
            rhs = grads[j].rep - (MultiPoly.variable(d, j) * g.rep).scale(gamma + d - 1)
            for root, sigma in ctx.reflections():
                if root.multiplicity == 0:
                    continue
                xi_sigma_j = MultiPoly.linear_form([sigma[i][j] for i in range(d)])
                rhs = rhs - (xi_sigma_j * g.rep.compose_linear(sigma)).scale(root.multiplicity)
            if SphereFunction.from_poly(lhs) != SphereFunction.from_poly(rhs):
                return _wit(g.rep, f"coordinate product lemma failed in component {j}")
        return None

    return trial_loop(env, "lemma-3.7", body)


def check_eq_3_11(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    d = env.dimension

    def body(t, seed):
        f = _sf(env.sample(seed))
        g = _sf(env.sample(seed + 1))
        gf = spherical_gradient_h(ctx, f)
        gg = spherical_gradient_h(ctx, g)
        lhs = MultiPoly.zero(d)
        for a, b in zip(gf, gg):
            lhs = lhs + a.rep * b.rep
        lhs = lhs - xi_dot_gradient(ctx, f).rep * xi_dot_gradient(ctx, g).rep
        rhs = MultiPoly.zero(d)
        for i in range(d):
            for j in range(i + 1, d):
                rhs = rhs + angular_dunkl(ctx, i, j, f.rep) * angular_dunkl(ctx, i, j, g.rep)
        if SphereFunction.from_poly(lhs) != SphereFunction.from_poly(rhs):
            return _wit(f.rep, "bilinear angular expansion failed (radial term subtracted)")
        return None

    return trial_loop(env, "eq-3.11", body)


def check_eq_3_12(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    d = env.dimension

    def body(t, seed):
        f = _sf(env.sample(seed))
        gf = spherical_gradient_h(ctx, f)
        xd = xi_dot_gradient(ctx, f)
        lhs = MultiPoly.zero(d)
        for a in gf:
            lhs = lhs + a.rep * a.rep
        lhs = lhs - xd.rep * xd.rep
        rhs = MultiPoly.zero(d)
        for i in range(d):
            for j in range(i + 1, d):
                dij = angular_dunkl(ctx, i, j, f.rep)
                rhs = rhs + dij * dij
        if SphereFunction.from_poly(lhs) != SphereFunction.from_poly(rhs):
            return _wit(f.rep, "quadratic angular expansion failed (radial term subtracted)")
        return None

    return trial_loop(env, "eq-3.12", body)


def check_eq_3_13(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    d = env.dimension
    lam = ctx.lam

    def body(t, seed):
        f = _sf(env.sample(seed))
        acc = MultiPoly.zero(d)
        for i in range(d):
            for j in range(i + 1, d):
                once = SphereFunction.from_poly(angular_dunkl(ctx, i, j, f.rep))
                acc = acc + angular_dunkl(ctx, i, j, once.rep)
        xd = xi_dot_gradient(ctx, f)
        total = SphereFunction.from_poly(acc) - xi_dot_gradient(ctx, xd) + xd.scale(2 * lam)
        t4 = MultiPoly.zero(d)
        t5 = MultiPoly.zero(d)
        for root, sigma in ctx.reflections():
            k2 = root.multiplicity**2
            if k2 == 0:
                continue
            once = f.rep - f.rep.compose_linear(sigma)
            t4 = t4 + once.scale(k2)
            t5 = t5 + (once - once.compose_linear(sigma)).scale(k2)
        total = total - SphereFunction.from_poly(t4).scale(2) + SphereFunction.from_poly(t5)
        if total != laplace_beltrami_h(ctx, f):
            return _wit(f.rep, "second-order angular decomposition failed")
        return None

    return trial_loop(env, "eq-3.13", body)


def check_commutativity(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    d = env.dimension

    def body(t, seed):
        f = env.sample(seed)
        for i in range(d):
            for j in range(i + 1, d):
                if dunkl(ctx, i, dunkl(ctx, j, f)) != dunkl(ctx, j, dunkl(ctx, i, f)):
                    return _wit(f, f"Dunkl operators {i} and {j} failed to commute")
        return None

    return trial_loop(env, "dunkl-commutativity", body)


def check_laplacian_explicit(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx

    def body(t, seed):
        f = env.sample(seed)
        if h_laplacian(ctx, f) != h_laplacian_explicit(ctx, f):
            return _wit(f, "composed and expanded h-Laplacians disagree")
        return None

    return trial_loop(env, "laplacian-explicit-form", body)


def check_root_scaling(env: CheckEnv) -> CheckOutcome:
    rs = env.config.root_system
    scaled = RootSystem(
        rs.dimension,
        tuple(
            type(r)(tuple(2 * c for c in r.vector), r.multiplicity)
            for r in rs.positive_roots
        ),
        rs.kind,
    )
    ctx2 = OperatorContext.for_system(scaled)
    ctx = env.ctx
    d = env.dimension

    def body(t, seed):
        f = env.sample(seed)
        for j in range(d):
            if dunkl(ctx, j, f) != dunkl(ctx2, j, f):
                return _wit(f, f"Dunkl operator {j} changed under root rescaling")
        if h_laplacian(ctx, f) != h_laplacian(ctx2, f):
            return _wit(f, "h-Laplacian changed under root rescaling")
        if integrate_sphere(env.sphere_dom, f) != integrate_sphere(
            WeightedDomain.sphere(scaled), f
        ):
            return _wit(f, "normalized integral changed under root rescaling")
        return None

    return trial_loop(env, "root-scaling-invariance", body, trials=min(env.config.trials, 10))


# -- harmonics ------------------------------------------------------------------


def check_eq_2_8(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    lam = ctx.lam

    def body(t, seed):
        f = _sf(env.sample(seed))
        for n, comp in harmonic_components(ctx, f).items():
            sc = SphereFunction.from_poly(comp)
            if laplace_beltrami_h(ctx, sc) != sc.scale(-Q(n) * (n + 2 * lam)):
                return _wit(comp, f"eigen-relation failed at degree {n}")
        return None

    return trial_loop(env, "eq-2.8", body)


def check_eq_2_9(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    dom = env.sphere_dom
    lam = ctx.lam
    d = env.dimension

    def body(t, seed):
        f = _sf(env.sample(seed))
        mean = integrate_sphere(dom, f)
        fz = SphereFunction.from_poly(f.rep - MultiPoly.constant(d, mean))
        if neg_laplacian_power(ctx, fz, 0) != fz:
            return _wit(f.rep, "zeroth spectral power is not the identity on mean-zero input")
        if neg_laplacian_power(ctx, fz, 1) != -laplace_beltrami_h(ctx, fz):
            return _wit(f.rep, "first spectral power disagrees with the negated Laplacian")
        twice = neg_laplacian_power(ctx, neg_laplacian_power(ctx, fz, 1), 1)
        if neg_laplacian_power(ctx, fz, 2) != twice:
            return _wit(f.rep, "second spectral power is not the square of the first")
        comp = proj(ctx, f, 2)
        if not comp.is_zero():
            sc = SphereFunction.from_poly(comp)
            eig = Q(2) * (2 + 2 * lam)
            if neg_laplacian_power(ctx, sc, 3) != sc.scale(eig**3):
                return _wit(comp, "single eigenspace scaling failed at power 3")
        return None

    return trial_loop(env, "eq-2.9", body)


def check_cor_2_11(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    dom = env.sphere_dom

    def body(t, seed):
        f = env.sample(seed, invariant_group=env.group)
        sf = _sf(f)
        lhs = sobolev_half_norm_sq(ctx, sf)
        grads = spherical_gradient_h(ctx, sf)
        rhs = sum((integrate_sphere(dom, c.rep * c.rep) for c in grads), Q(0))
        if lhs != rhs:
            return _wit(f, "half-power norm != gradient norm on invariant input")
        return None

    return trial_loop(env, "cor-2.11", body)


def check_parseval(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    dom = env.sphere_dom

    def body(t, seed):
        f = _sf(env.sample(seed))
        if parseval_norm_sq(ctx, f) != integrate_sphere(dom, f.rep * f.rep):
            return _wit(f.rep, "component norms do not sum to the squared norm")
        return None

    return trial_loop(env, "parseval", body)


def check_proj_orthogonality(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    dom = env.sphere_dom

    def body(t, seed):
        f = _sf(env.sample(seed))
        g = _sf(env.sample(seed + 1))
        comps = harmonic_components(ctx, f)
        degs = sorted(comps)
        for a in range(len(degs)):
            for b in range(a + 1, len(degs)):
                if integrate_sphere(dom, comps[degs[a]] * comps[degs[b]]) != 0:
                    return _wit(f.rep, f"components {degs[a]} and {degs[b]} not orthogonal")
        for n in degs:
            pn = comps[n]
            if proj(ctx, SphereFunction.from_poly(pn), n) != pn:
                return _wit(pn, f"projection not idempotent at degree {n}")
            lhs = integrate_sphere(dom, pn * g.rep)
            rhs = integrate_sphere(dom, f.rep * proj(ctx, g, n))
            if lhs != rhs:
                return _wit(f.rep, f"projection not self-adjoint at degree {n}")
        return None

    return trial_loop(env, "proj-orthogonality", body, trials=min(env.config.trials, 15))


def check_harmonic_reconstruction(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    ns = MultiPoly.norm_squared(env.dimension)

    def body(t, seed):
        f = env.sample(seed)
        for m, part in f.homogeneous_parts():
            rec = MultiPoly.zero(env.dimension)
            for j, comp in harmonic_decompose(ctx, part):
                if not is_h_harmonic(ctx, comp):
                    return _wit(part, f"component at shift {j} is not h-harmonic")
                rec = rec + ns**j * comp
            if rec != part:
                return _wit(part, "radial reconstruction failed")
        return None

    return trial_loop(env, "harmonic-reconstruction", body)


# -- integration oracle ----------------------------------------------------------


def _z_score(est, exact) -> float:
    if est.stderr == 0:
        return 0.0
    return abs(est.mean - float(exact)) / est.stderr


def check_moment_formula_mc(env: CheckEnv) -> CheckOutcome:
    if not env.tier_allowed("C"):
        return skipped("Monte Carlo tier disabled in config")
    cases = max(env.config.trials, 30)
    samples = env.config.mc_samples
    worst = {"z": 0.0}

    def body(t, seed):
        rng = random.Random(seed)
        d = rng.choice([2, 3, 4])
        kappa = [Q(rng.randint(0, 8), rng.randint(1, 4)) for _ in range(d)]
        alpha = [2 * rng.randint(0, 2) for _ in range(d)]
        exact = sphere_monomial_integral(d, kappa, alpha)
        odd = list(alpha)
        odd[rng.randrange(d)] += 1
        if sphere_monomial_integral(d, kappa, odd) != 0:
            return (str(odd), "odd moment was not exactly zero")
        dom = WeightedDomain.sphere(RootSystem.z2d(kappa))
        mono = MultiPoly(d, {tuple(alpha): Q(1)})
        est = mc_integrate(dom, mono, samples, seed)
        worst["z"] = max(worst["z"], _z_score(est, exact))
        if not est.agrees_with(exact):
            return (
                format_poly(mono),
                f"moment {exact} vs MC mean={est.mean} stderr={est.stderr} "
                f"n={est.n_samples} seed={est.seed} (kappa={kappa})",
            )
        return None

    out = trial_loop(env, "moment-formula-mc", body, trials=cases)
    if out.status == "pass":
        out.detail = f"{cases} cases at {samples} samples; max |z| = {worst['z']:.2f}"
    return out


def check_exact_vs_mc(env: CheckEnv) -> CheckOutcome:
    if not env.tier_allowed("C"):
        return skipped("Monte Carlo tier disabled in config")
    samples = env.config.mc_samples
    trials = min(env.config.trials, 10)
    worst = {"z": 0.0}

    def compare(dom, f, ex, seed, label, direct=False):
        fn = mc_integrate_simplex_direct if direct else mc_integrate
        est = fn(dom, f, samples, seed)
        worst["z"] = max(worst["z"], _z_score(est, ex))
        if not est.agrees_with(ex):
            return (
                f"{label} exact {ex} vs MC mean={est.mean} stderr={est.stderr} "
                f"n={est.n_samples} seed={est.seed}"
            )
        return None

    def body(t, seed):
        f = env.sample(seed, terms=4)
        msg = compare(env.sphere_dom, f, integrate_sphere(env.sphere_dom, f), seed, "sphere")
        if msg:
            return _wit(f, msg)
        msg = compare(env.ball_dom, f, integrate_ball(env.ball_dom, f), seed + 1, "ball")
        if msg:
            return _wit(f, msg)
        if env.simplex_dom is not None:
            ex = integrate_simplex(env.simplex_dom, f)
            msg = compare(env.simplex_dom, f, ex, seed + 2, "simplex")
            if msg:
                return _wit(f, msg)
            mults = [r.multiplicity for r in env.config.root_system.positive_roots]
            if min(mults, default=Q(0)) >= Q(1, 4) and env.config.mu_simplex >= Q(1, 4):
                # direct sampling has finite variance only away from the
                # strongest boundary singularities
                msg = compare(env.simplex_dom, f, ex, seed + 3, "simplex-direct", direct=True)
                if msg:
                    return _wit(f, msg)
        return None

    out = trial_loop(env, "exact-vs-mc", body, trials=trials)
    if out.status == "pass":
        out.detail = f"{trials} integrands at {samples} samples; max |z| = {worst['z']:.2f}"
    return out


def check_sqrt_moment_mc(env: CheckEnv) -> CheckOutcome:
    if not env.tier_allowed("C"):
        return skipped("Monte Carlo tier disabled in config")
    if env.simplex_dom is None:
        return skipped("config weight is not sign-change invariant; no simplex domain")
    import numpy as np

    samples = env.config.mc_samples
    trials = min(env.config.trials, 6)
    dom = env.simplex_dom
    d = env.dimension

    def body(t, seed):
        f = env.sample(seed, terms=3)
        ff = f * f
        fev_expos = list(ff.terms.items())
        for axis in range(d):
            exact = integrate_simplex_sqrt_axis(dom, ff, axis)

            def integrand(pts):
                vals = np.zeros(len(pts))
                for e, c in fev_expos:
                    term = float(c) * np.ones(len(pts))
                    for k, ek in enumerate(e):
                        if ek:
                            term *= pts[:, k] ** ek
                    vals += term
                return np.sqrt(pts[:, axis]) * vals

            est = mc_integrate(dom, integrand, samples, seed + axis)
            if not est.agrees_with(exact):
                return _wit(
                    f, f"sqrt moment axis {axis}: exact {float(exact)} vs MC {est.mean}+-{est.stderr}"
                )
        return None

    return trial_loop(env, "sqrt-moment-mc", body, trials=trials)


# -- isometries -------------------------------------------------------------------


def check_eq_5_2(env: CheckEnv) -> CheckOutcome:
    dom = env.ball_dom
    weight = dom._weight()

    def body(t, seed):
        f = env.sample(seed)
        lifted = lift_to_sphere(f)  # canonical sphere representative
        lhs = weight.moment(lifted.rep * lifted.rep)
        rhs = integrate_ball(dom, f * f)
        if lhs != rhs:
            return _wit(f, "ball norm != lifted sphere norm")
        return None

    return trial_loop(env, "eq-5.2", body)


def check_eq_6_4(env: CheckEnv) -> CheckOutcome:
    if env.simplex_dom is None:
        return skipped("config weight is not sign-change invariant; no simplex domain")
    domT = env.simplex_dom
    domB = env.ball_dom

    def body(t, seed):
        f = env.sample(seed)
        if integrate_simplex(domT, f * f) != integrate_ball(domB, pullback_simplex(f) ** 2):
            return _wit(f, "simplex norm != ball norm of the pullback")
        return None

    return trial_loop(env, "eq-6.4", body)


def check_eq_5_4_triple_norm(env: CheckEnv) -> CheckOutcome:
    dom = env.ball_dom
    weight = dom._weight()

    def body(t, seed):
        f = env.sample(seed, terms=4)
        F = lift_to_sphere(f)
        grads = spherical_gradient_classical(F)
        lhs = Q(0)
        for c in grads:
            lhs = lhs + weight.moment(c.rep * c.rep)
        if lhs != ball_triple_norm_sq(dom, f):
            return _wit(f, "triple norm != squared spherical gradient of the lift")
        return None

    return trial_loop(env, "eq-5.4", body, trials=min(env.config.trials, 20))


def check_eq_6_3(env: CheckEnv) -> CheckOutcome:
    if env.simplex_dom is None:
        return skipped("config weight is not sign-change invariant; no simplex domain")
    domT = env.simplex_dom
    domB = env.ball_dom

    def body(t, seed):
        f = env.sample(seed, terms=4)
        if 4 * simplex_triple_norm_sq(domT, f) != ball_triple_norm_sq(
            domB, pullback_simplex(f)
        ):
            return _wit(f, "simplex and pulled-back ball first-order energies disagree")
        return None

    return trial_loop(env, "eq-6.3", body, trials=min(env.config.trials, 20))


def check_angular_split(env: CheckEnv) -> CheckOutcome:
    d = env.dimension

    def body(t, seed):
        f = env.sample(seed)
        xg = x_dot_grad(f)
        lhs = angular_sq_sum(f)
        rhs = MultiPoly.norm_squared(d) * gradient_sq_sum(f) - xg * xg
        if lhs != rhs:
            return _wit(f, "angular square sum decomposition failed")
        return None

    return trial_loop(env, "angular-split", body)


def check_cor_5_4_pointwise(env: CheckEnv) -> CheckOutcome:
    d = env.dimension
    dom0 = WeightedDomain.ball(RootSystem.z2d([0] * d), env.config.mu_ball)

    def body(t, seed):
        f = env.sample(seed, terms=4)
        gap = partial_gradient_bound_gap(f)
        rng = random.Random(seed)
        for _ in range(100):
            while True:
                pt = [Q(rng.randint(-99, 99), 100) for _ in range(d)]
                if sum(c * c for c in pt) <= 1:
                    break
            if gap.evaluate(pt) < 0:
                return _wit(f, f"pointwise gradient comparison failed at {pt}")
        if integrate_ball(dom0, gap) < 0:
            return _wit(f, "integrated gradient comparison failed")
        return None

    return trial_loop(env, "cor-5.4-pointwise", body, trials=min(env.config.trials, 20))


# -- uncertainty -------------------------------------------------------------------


def _admissible_or_none(dom, f):
    from .errors import DegenerateInputError

    try:
        return make_admissible(dom, f)
    except DegenerateInputError:
        return None


def check_eq_4_1_safe(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    dom = env.sphere_dom

    def body(t, seed):
        f = env.sample(seed, invariant_group=env.group)
        adm = _admissible_or_none(dom, _sf(f))
        if adm is None:
            return None
        res = sphere_uncertainty(ctx, adm)
        if not (0 < res.localization < 2):
            return _wit(f, f"localization {res.localization} outside (0, 2)")
        if not res.margin_nonneg:
            return _wit(f, f"product {float(res.product)} below constant {res.constant}")
        if not res.margin_exact:
            return _wit(f, "sphere margin unexpectedly inexact")
        return None

    return trial_loop(env, "eq-4.1", body)


def check_eq_4_2(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx

    def body(t, seed):
        f = _sf(env.sample(seed))
        residuals = first_moment_identity_residuals(ctx, f)
        if any(r != 0 for r in residuals):
            return _wit(f.rep, f"first-moment identity residuals {residuals}")
        return None

    return trial_loop(env, "eq-4.2", body)


def check_eq_4_3(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    dom = env.sphere_dom

    def body(t, seed):
        f = env.sample(seed, invariant_group=env.group)
        adm = _admissible_or_none(dom, _sf(f))
        if adm is None:
            return None
        if not axis_product_bound_holds(ctx, adm):
            return _wit(f, "per-axis product lower bound failed")
        return None

    return trial_loop(env, "eq-4.3", body, trials=min(env.config.trials, 25))


def check_eq_4_4(env: CheckEnv) -> CheckOutcome:
    dom = env.sphere_dom

    def body(t, seed):
        f = env.sample(seed)
        adm = _admissible_or_none(dom, _sf(f))
        if adm is None:
            return None
        if not localization_bound_holds(dom, adm):
            return _wit(f, "localization second-moment bound failed")
        return None

    return trial_loop(env, "eq-4.4", body)


def check_gradient_lower_bound(env: CheckEnv) -> CheckOutcome:
    ctx = env.ctx
    dom = env.sphere_dom

    def body(t, seed):
        f = env.sample(seed, invariant_group=env.group)
        adm = _admissible_or_none(dom, _sf(f))
        if adm is None:
            return None
        ok, grad_sq, sob = gradient_lower_bound_holds(ctx, adm)
        if not ok:
            return _wit(f, f"gradient bound failed: grad^2={grad_sq}, half-power={sob}")
        return None

    return trial_loop(env, "gradient-lower-bound", body, trials=min(env.config.trials, 25))


def check_eq_5_1(env: CheckEnv) -> CheckOutcome:
    dom = env.ball_dom
    d = env.dimension

    def body(t, seed):
        if integrate_ball(dom, MultiPoly.one(d)) != 1:
            return ("1", "ball normalization is not 1")
        f = env.sample(seed, terms=4)
        base = integrate_ball(dom, f)
        for _, sigma in env.ctx.reflections():
            if integrate_ball(dom, f.compose_linear(sigma)) != base:
                return _wit(f, "ball integral not reflection invariant")
        return None

    return trial_loop(env, "eq-5.1", body, trials=min(env.config.trials, 10))


def check_thm_5_1(env: CheckEnv) -> CheckOutcome:
    dom = env.ball_dom

    def body(t, seed):
        f = env.sample(seed, invariant_group=env.group)
        adm = _admissible_or_none(dom, f)
        if adm is None:
            return None
        res = ball_uncertainty(dom, adm, "invariant-axes")
        if not res.margin_nonneg:
            return _wit(f, f"product {float(res.product)} below constant {res.constant}")
        if not res.margin_exact:
            return _wit(f, "ball axes margin unexpectedly inexact")
        return None

    return trial_loop(env, "thm-5.1", body)


def check_thm_5_2(env: CheckEnv) -> CheckOutcome:
    dom0 = WeightedDomain.ball(
        RootSystem.z2d([0] * env.dimension), env.config.mu_ball
    )

    def body(t, seed):
        f = env.sample(seed)
        adm = _admissible_or_none(dom0, f)
        if adm is None:
            return None
        res = ball_uncertainty(
            dom0, adm, "classical-directions",
            direction_samples=env.config.direction_samples, seed=seed,
        )
        if not res.margin_nonneg:
            return _wit(f, f"directional product {res.product} below {res.constant}")
        return None

    return trial_loop(env, "thm-5.2", body, trials=min(env.config.trials, 25))


def check_cor_5_4(env: CheckEnv) -> CheckOutcome:
    dom0 = WeightedDomain.ball(
        RootSystem.z2d([0] * env.dimension), env.config.mu_ball
    )

    def body(t, seed):
        f = env.sample(seed)
        adm = _admissible_or_none(dom0, f)
        if adm is None:
            return None
        res = ball_uncertainty(
            dom0, adm, "corollary54",
            direction_samples=env.config.direction_samples, seed=seed,
        )
        if not res.margin_nonneg:
            return _wit(f, f"partial-derivative product {res.product} below {res.constant}")
        return None

    return trial_loop(env, "cor-5.4", body, trials=min(env.config.trials, 25))


def check_thm_6_1(env: CheckEnv) -> CheckOutcome:
    if env.simplex_dom is None:
        return skipped("config weight is not sign-change invariant; no simplex domain")
    if env.config.root_system.kind != KIND_Z2D:
        return skipped("Jacobi mode needs a sign-change (z2d) weight")
    dom = env.simplex_dom

    def body(t, seed):
        f = env.sample(seed, terms=4)
        adm = _admissible_or_none(dom, f)
        if adm is None:
            return None
        res = simplex_uncertainty(dom, adm, "jacobi")
        if not res.margin_nonneg:
            return _wit(f, f"simplex product {float(res.product)} below {res.constant}")
        return None

    return trial_loop(env, "thm-6.1", body, trials=min(env.config.trials, 25))


def check_thm_6_2(env: CheckEnv) -> CheckOutcome:
    if env.simplex_dom is None or env.config.root_system.kind == KIND_Z2D:
        return skipped("needs a sign-change invariant general (hyperoctahedral) weight")
    dom = env.simplex_dom

    def body(t, seed):
        f = env.sample(seed, symmetric=True, terms=4)
        adm = _admissible_or_none(dom, f)
        if adm is None:
            return None
        res = simplex_uncertainty(dom, adm, "hyperoctahedral-symmetric")
        if not res.margin_nonneg:
            return _wit(f, f"symmetric simplex product {float(res.product)} below {res.constant}")
        return None

    return trial_loop(env, "thm-6.2", body, trials=min(env.config.trials, 25))


def check_rotation_invariance(env: CheckEnv) -> CheckOutcome:
    d = env.dimension
    dom0 = WeightedDomain.ball(RootSystem.z2d([0] * d), env.config.mu_ball)
    group = signed_permutation_group(d) if d <= 3 else signed_permutation_group(3)

    def body(t, seed):
        f = env.sample(seed, terms=4)
        if d > 3:
            return None
        base = ball_triple_norm_sq(dom0, f)
        for m in group:
            if ball_triple_norm_sq(dom0, f.compose_linear(m)) != base:
                return _wit(f, "triple norm changed under a signed permutation")
        return None

    return trial_loop(env, "rotation-invariance", body, trials=min(env.config.trials, 5))


# -- ball eigen ---------------------------------------------------------------------


def check_eq_5_5(env: CheckEnv) -> CheckOutcome:
    configs = []
    if env.dimension <= 2:
        configs.append(env.ball_dom)
    base_kappa = [Q(1, 2), Q(1)]
    configs.append(WeightedDomain.ball(RootSystem.z2d(base_kappa[: min(env.dimension, 2)] or [Q(1, 2)]), Q(1, 2)))
    configs.append(WeightedDomain.ball(RootSystem.z2d([Q(2)] * min(env.dimension, 2)), Q(3, 2)))
    details = []
    for dom in configs:
        lam = lambda_ball(dom)
        for n, p in gram_schmidt(dom, 4):
            if d_kappa_mu(dom, p) != p.scale(ball_eigenvalue(dom, n)):
                return CheckOutcome(
                    "fail",
                    len(configs),
                    {"seed": env.config.seed, "polynomial": format_poly(p),
                     "detail": f"degree {n} orthogonal polynomial is not an eigenfunction"},
                )
        details.append(
            f"d={dom.dimension} mu={dom.mu}: eigenvalue -n(n+2*lam) with lam="
            f"gamma+mu+(d-1)/2={lam}"
        )
    return CheckOutcome("pass", len(configs), None, "; ".join(details))


# -- constants ------------------------------------------------------------------------


def check_constant_spot(env: CheckEnv) -> CheckOutcome:
    half = constant_C(Q(1, 2))
    if abs(half - (1 - 1 / math.sqrt(2))) > 1e-12:
        return CheckOutcome("fail", 1, {"seed": 0, "polynomial": "", "detail": f"C(1/2)={half}"})
    if constant_C(0) != 0.0:
        return CheckOutcome("fail", 1, {"seed": 0, "polynomial": "", "detail": "C(0) != 0"})
    one = constant_C(1)
    golden = 2 * (1 - math.sqrt(2) / math.sqrt(17 / 4))
    if abs(one - golden) > 1e-12:
        return CheckOutcome("fail", 1, {"seed": 0, "polynomial": "", "detail": f"C(1)={one}"})
    # quarter-constant wiring of the simplex bound
    dom = WeightedDomain.simplex(RootSystem.z2d([Q(1, 2)]), Q(1, 2))
    x = MultiPoly.variable(1, 0)
    res = simplex_uncertainty(dom, make_admissible(dom, x), "jacobi")
    lam = lambda_ball(dom)
    if abs(res.constant - constant_C(lam) / 4) > 1e-15:
        return CheckOutcome(
            "fail", 1,
            {"seed": 0, "polynomial": "x1", "detail": "simplex constant is not C/4"},
        )
    return CheckOutcome("pass", 4, None, f"C(1/2)={half:.12f}, C(1)={one:.12f}")


CHECKS = [
    # identities
    Check("eq-2.2", "2.2", "identities",
          "spherical Laplacian equals the sum of squared angular derivatives (classical)",
          check_eq_2_2),
    Check("eq-2.3", "2.3", "identities",
          "classical gradient pairing equals the angular derivative pairing",
          check_eq_2_3),
    Check("eq-2.4", "2.4", "identities",
          "angular derivatives are antisymmetric on the unweighted sphere",
          check_eq_2_4),
    Check("eq-2.5", "2.5", "identities",
          "radial commutation of the h-Laplacian (polar split bookkeeping)",
          check_eq_2_5),
    Check("eq-3.1", "3.1", "identities",
          "Euler relation: x . grad_h on homogeneous input equals degree plus radial term",
          check_eq_3_1),
    Check("eq-3.2", "3.2", "identities",
          "spherical h-gradient equals classical part plus multiplicity-weighted differences",
          check_eq_3_2),
    Check("eq-3.3", "3.3", "identities",
          "radial pairing of the spherical h-gradient equals the reflection differences",
          check_eq_3_3),
    Check("eq-3.4", "3.4", "identities",
          "spherical h-Laplacian equals gradient divergence minus radial pairing",
          check_eq_3_4),
    Check("eq-3.6", "3.6", "identities",
          "angular Dunkl operator splits into classical plus difference parts",
          check_eq_3_6),
    Check("eq-3.8", "3.8", "identities",
          "gradient components expand over angular Dunkl operators plus the radial term",
          check_eq_3_8),
    Check("eq-3.9", "3.9", "identities",
          "coordinate product rule for Dunkl operators with reflection corrections",
          check_eq_3_9),
    Check("eq-3.11", "3.11", "identities",
          "bilinear angular expansion; the radial product enters with a minus sign "
          "(the plus variant fails already for f=g=x1 at positive multiplicity)",
          check_eq_3_11),
    Check("eq-3.12", "3.12", "identities",
          "quadratic angular expansion with the radial square subtracted",
          check_eq_3_12),
    Check("eq-3.13", "3.13", "identities",
          "second-order decomposition of the spherical h-Laplacian over angular operators",
          check_eq_3_13),
    Check("lemma-3.7", "3.10", "identities",
          "coordinate product lemma feeding the adjoint formula (x_i form)",
          check_lemma_3_7),
    Check("dunkl-commutativity", "plumbing", "identities",
          "Dunkl operators commute pairwise", check_commutativity),
    Check("laplacian-explicit-form", "plumbing", "identities",
          "composed h-Laplacian equals its expanded differential-difference form",
          check_laplacian_explicit),
    Check("root-scaling-invariance", "plumbing", "identities",
          "rescaling root vectors (same multiplicities) changes nothing",
          check_root_scaling),
    # integration by parts
    Check("eq-3.7", "3.7", "integration_by_parts",
          "angular Dunkl operators are antisymmetric for the weighted measure",
          check_eq_3_7),
    Check("eq-3.10", "3.10", "integration_by_parts",
          "adjoint of the spherical h-gradient (integration by parts with drift)",
          check_eq_3_10),
    # harmonics
    Check("eq-2.8", "2.8", "harmonics",
          "projections are eigenfunctions of the spherical h-Laplacian",
          check_eq_2_8),
    Check("eq-2.9", "2.9", "harmonics",
          "integer spectral powers compose and scale correctly",
          check_eq_2_9),
    Check("cor-2.11", "cor-2.11", "harmonics",
          "half-power norm equals gradient norm on invariant functions",
          check_cor_2_11),
    Check("parseval", "plumbing", "harmonics",
          "squared norm equals the sum of component squared norms",
          check_parseval),
    Check("proj-orthogonality", "plumbing", "harmonics",
          "projections are orthogonal, idempotent and self-adjoint",
          check_proj_orthogonality),
    Check("harmonic-reconstruction", "plumbing", "harmonics",
          "radial harmonic decomposition reconstructs its input exactly",
          check_harmonic_reconstruction),
    # oracle
    Check("moment-formula-mc", "plumbing", "oracle",
          "closed-form sphere moments agree with the Monte Carlo oracle",
          check_moment_formula_mc),
    Check("exact-vs-mc", "plumbing", "oracle",
          "exact sphere/ball/simplex integrals agree with the Monte Carlo oracle",
          check_exact_vs_mc),
    Check("sqrt-moment-mc", "plumbing", "oracle",
          "half-integer shifted moments agree with the Monte Carlo oracle",
          check_sqrt_moment_mc),
    # isometry
    Check("eq-5.2", "5.2", "isometry",
          "ball norm equals the weighted sphere norm of the lift",
          check_eq_5_2),
    Check("eq-5.4", "5.4", "isometry",
          "ball triple norm equals the squared spherical gradient of the lift",
          check_eq_5_4_triple_norm),
    Check("eq-6.3", "6.3", "isometry",
          "four times the simplex first-order energy equals the pulled-back ball energy",
          check_eq_6_3),
    Check("eq-6.4", "6.4", "isometry",
          "simplex norm equals the ball norm of the squaring pullback",
          check_eq_6_4),
    Check("angular-split", "plumbing", "isometry",
          "angular square sum equals norm-weighted gradient minus radial derivative",
          check_angular_split),
    Check("cor-5.4-pointwise", "cor-5.4", "isometry",
          "pointwise partial-derivative bound with the required factor 2",
          check_cor_5_4_pointwise),
    # uncertainty
    Check("eq-4.1", "4.1", "uncertainty",
          "sphere uncertainty product stays above its constant on invariant inputs",
          check_eq_4_1_safe),
    Check("eq-4.2", "4.2", "uncertainty",
          "first-moment identity from the adjoint formula (any input)",
          check_eq_4_2),
    Check("eq-4.3", "4.3", "uncertainty",
          "per-axis Cauchy-Schwarz lower bound for the product",
          check_eq_4_3),
    Check("eq-4.4", "4.4", "uncertainty",
          "localization second-moment bound (Cauchy-Schwarz)",
          check_eq_4_4),
    Check("gradient-lower-bound", "plumbing", "uncertainty",
          "gradient norm dominates twice the spectral constant on invariant inputs",
          check_gradient_lower_bound),
    Check("eq-5.1", "5.1", "uncertainty",
          "ball weight is normalized and reflection invariant",
          check_eq_5_1),
    Check("thm-5.1", "5.3", "uncertainty",
          "ball axes uncertainty product stays above its constant on invariant inputs",
          check_thm_5_1),
    Check("thm-5.2", "thm-5.2", "uncertainty",
          "rotation-invariant ball product over sampled directions stays above the constant",
          check_thm_5_2),
    Check("cor-5.4", "cor-5.4", "uncertainty",
          "partial-derivative gradient variant stays above half the constant",
          check_cor_5_4),
    Check("thm-6.1", "6.2", "uncertainty",
          "Jacobi simplex uncertainty product stays above a quarter of the constant",
          check_thm_6_1),
    Check("thm-6.2", "6.2", "uncertainty",
          "hyperoctahedral simplex product on symmetric inputs stays above the bound",
          check_thm_6_2),
    Check("rotation-invariance", "plumbing", "uncertainty",
          "triple norm is invariant under signed permutations at zero multiplicities",
          check_rotation_invariance),
    # ball eigen
    Check("eq-5.5", "5.5", "ball_eigen",
          "Gram-Schmidt orthogonal polynomials are exact eigenfunctions; the fitted "
          "eigenvalue is -n(n+2*lam) with lam = gamma + mu + (d-1)/2 and a negative "
          "drift sign in the operator",
          check_eq_5_5),
    # constants
    Check("constant-C", "4.1", "constants",
          "golden values of the bound constant and the quarter wiring on the simplex",
          check_constant_spot),
]


def coverage_map() -> dict:
    """Equation -> check ids; used by the coverage subcommand."""
    table: dict[str, list] = {eq: [] for eq in EQUATIONS}
    extra: dict[str, list] = {}
    for c in CHECKS:
        if c.equation in table:
            table[c.equation].append(c.check_id)
        else:
            extra.setdefault(c.equation, []).append(c.check_id)
    return {"equations": table, "other": extra}
