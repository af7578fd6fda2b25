"""Uncertainty functionals on weighted spheres, balls and simplexes.

Each theorem bounds a product (localization term) x (squared gradient norm)
from below by an explicit constant for admissible functions, meaning zero
mean and unit norm in the weighted L2 space, plus group invariance or
permutation symmetry where required:

* sphere: min_i int (1 - x_i) |f|^2 h^2  *  |grad_0 f|^2   >= C(lam),
* ball:   min_i int (1 - x_i) |f|^2 W    *  |||grad f|||^2 >= C(lam_bm),
  and for the rotation-invariant weight (zero multiplicities) the minimum
  extends over all directions e, with the partial-derivative variant
  sum_i (1-x_i^2) |d_i f|^2 as a weaker gradient term;
* simplex: min_i int (1 - sqrt(x_i)) |f|^2 U * |||partial f|||^2
  >= C(lam_bm) / 4.

The constant is C(lam) = 2 lam (1 - sqrt(2 lam) / sqrt((lam+1/2)^2 + 2 lam)),
with lam the sphere constant gamma + (d-2)/2 or its ball analogue
gamma + mu + (d-1)/2.

Normalization is carried symbolically: ``make_admissible`` centers f and
stores the exact squared norm N, and every quadratic functional of f/sqrt(N)
is a rational divided by N, so products and margins stay exact wherever the
localization itself is rational. Comparisons against the irrational constant
use exact squaring; genuinely irrational localizations (some sqrt moments on
the simplex, direction minima on the ball) are evaluated with mpmath at high
precision instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Optional, Union

import mpmath

from .errors import AdmissibilityError, DegenerateInputError, InternalInconsistencyError
from .domains import (
    ball_triple_norm_sq,
    is_symmetric,
    lambda_ball,
    simplex_triple_norm_sq,
)
from .groups import permutation_group
from .operators import (
    OperatorContext,
    spherical_gradient_classical,
    spherical_gradient_h,
)
from .poly import MultiPoly, SphereFunction
from .quadrature import (
    BALL,
    SIMPLEX,
    SPHERE,
    WeightedDomain,
    integrate,
    integrate_ball,
    integrate_simplex_sqrt_axis,
    integrate_sphere,
)

MODE_INVARIANT_AXES = "invariant-axes"
MODE_CLASSICAL_DIRECTIONS = "classical-directions"
MODE_COROLLARY54 = "corollary54"
MODE_JACOBI = "jacobi"
MODE_HYPEROCTAHEDRAL = "hyperoctahedral-symmetric"

Value = Union[Q, mpmath.mpf, float]


def constant_C(lam) -> float:
    """Lower-bound constant; zero at lam = 0 and strictly positive beyond."""
    lam = Q(lam)
    if lam < 0:
        raise ValueError("constant is defined for nonnegative lam only")
    if lam == 0:
        return 0.0
    with mpmath.workdps(50):
        lm = mpmath.mpf(lam.numerator) / lam.denominator
        val = 2 * lm * (1 - mpmath.sqrt(2 * lm) / mpmath.sqrt((lm + Q(1, 2)) ** 2 + 2 * lm))
    return float(val)


def product_meets_constant(product, lam) -> Optional[bool]:
    """Exact decision of product >= C(lam) for rational product; None if the
    product itself is irrational (caller falls back to high precision)."""
    lam = Q(lam)
    if not isinstance(product, (Q, int)):
        return None
    p = Q(product)
    if lam == 0:
        return p >= 0
    # p >= 2 lam (1 - sqrt(t)) with t = 2 lam / ((lam+1/2)^2 + 2 lam) < 1
    gap = 2 * lam - p
    if gap <= 0:
        return True
    t = 2 * lam / ((lam + Q(1, 2)) ** 2 + 2 * lam)
    return gap * gap <= 4 * lam * lam * t


@dataclass(frozen=True)
class AdmissibleFunction:
    """Centered function with its exact squared norm, i.e. g / sqrt(norm_sq).

    Quadratic functionals of the normalized function are rationals divided by
    norm_sq, which keeps the whole uncertainty pipeline exact.
    """

    domain: WeightedDomain
    centered: MultiPoly
    norm_sq: Q
    mean: Q

    def quadratic(self, weighted_integral: Q) -> Q:
        return weighted_integral / self.norm_sq


def make_admissible(dom: WeightedDomain, f) -> AdmissibleFunction:
    """Center and symbolically normalize f on its weighted domain."""
    if isinstance(f, SphereFunction):
        if dom.shape != SPHERE:
            raise AdmissibilityError("sphere restriction given for a non-sphere domain")
        p = f.rep
    else:
        p = f
    if p.dimension != dom.dimension:
        raise AdmissibilityError("function dimension does not match the domain")
    mean = integrate(dom, p)
    centered = p - MultiPoly.constant(p.dimension, mean)
    if dom.shape == SPHERE:
        centered = centered.reduce_mod_sphere().rep
    norm_sq = integrate(dom, centered * centered)
    if norm_sq == 0:
        raise DegenerateInputError("function is constant on the domain")
    return AdmissibleFunction(dom, centered, norm_sq, mean)


def _require_admissible(dom: WeightedDomain, f) -> AdmissibleFunction:
    if isinstance(f, AdmissibleFunction):
        if f.domain != dom:
            raise AdmissibilityError("admissible function built for another domain")
        return f
    p = f.rep if isinstance(f, SphereFunction) else f
    if dom.shape == SPHERE:
        p = p.reduce_mod_sphere().rep
    if integrate(dom, p) != 0:
        raise AdmissibilityError("function must have exact zero mean")
    if integrate(dom, p * p) != 1:
        raise AdmissibilityError(
            "function must have exact unit norm; use make_admissible"
        )
    return AdmissibleFunction(dom, p, Q(1), Q(0))


@dataclass(frozen=True)
class UncertaintyResult:
    """Outcome of one uncertainty-functional evaluation."""

    mode: str
    localization: Value
    gradient_sq: Value
    product: Value
    constant: float
    margin: float
    margin_nonneg: bool
    margin_exact: bool
    per_axis: tuple
    admissible_flags: dict
    trivially_true: bool

    def as_record(self) -> dict:
        def enc(v):
            if isinstance(v, Q):
                return str(v)
            return float(v)

        return {
            "mode": self.mode,
            "localization": enc(self.localization),
            "gradient_sq": enc(self.gradient_sq),
            "product": enc(self.product),
            "constant": self.constant,
            "margin": self.margin,
            "margin_nonneg": self.margin_nonneg,
            "margin_exact": self.margin_exact,
            "per_axis": [enc(v) for v in self.per_axis],
            "admissible_flags": {
                k: (str(v) if isinstance(v, Q) else v)
                for k, v in self.admissible_flags.items()
            },
            "trivially_true": self.trivially_true,
        }


def _constant_hp(lam: Q):
    """scale-free C(lam) as an mpf at the current working precision."""
    if lam == 0:
        return mpmath.mpf(0)
    lm = mpmath.mpf(lam.numerator) / lam.denominator
    inner = mpmath.mpf(((lam + Q(1, 2)) ** 2 + 2 * lam).numerator) / (
        ((lam + Q(1, 2)) ** 2 + 2 * lam).denominator
    )
    return 2 * lm * (1 - mpmath.sqrt(2 * lm) / mpmath.sqrt(inner))


def _finalize(
    mode: str,
    localization,
    gradient_sq,
    lam: Q,
    scale: Q,
    per_axis,
    flags: dict,
) -> UncertaintyResult:
    """Assemble the result; the bound constant is scale * C(lam)."""
    product = localization * gradient_sq
    const = float(scale) * constant_C(lam)
    if isinstance(product, Q):
        nonneg = product_meets_constant(product / scale, lam)
        margin_exact = True
    else:
        # localization came from mpf gamma quotients (high precision) or from
        # float direction sampling (double precision); tolerance accordingly
        with mpmath.workdps(50):
            margin_hp = mpmath.mpf(product) - mpmath.mpf(
                scale.numerator
            ) / scale.denominator * _constant_hp(lam)
            tol = mpmath.mpf("1e-30") if isinstance(product, mpmath.mpf) else mpmath.mpf(
                "1e-12"
            )
            nonneg = margin_hp >= -tol
        margin_exact = False
    return UncertaintyResult(
        mode=mode,
        localization=localization,
        gradient_sq=gradient_sq,
        product=product,
        constant=const,
        margin=float(product) - const,
        margin_nonneg=bool(nonneg),
        margin_exact=margin_exact,
        per_axis=tuple(per_axis),
        admissible_flags=flags,
        trivially_true=(lam == 0),
    )


def _invariance_residual(ctx: OperatorContext, dom: WeightedDomain, g: MultiPoly) -> Q:
    """Sum over generators of the squared norm of f o sigma - f (exact).

    Roots with zero multiplicity are skipped: they contribute nothing to the
    weight or the operators, and the invariance hypothesis only enters the
    bounds through terms scaled by the multiplicities.
    """
    total = Q(0)
    for root, sigma in ctx.reflections():
        if root.multiplicity == 0:
            continue
        diff = g.compose_linear(sigma) - g
        if not diff.is_zero():
            total += integrate(dom, diff * diff)
    return total


# -- sphere ------------------------------------------------------------------


def sphere_uncertainty(ctx: OperatorContext, f) -> UncertaintyResult:
    """Axis-minimum uncertainty product on the weighted sphere.

    Requires an admissible, group-invariant function; invariance violations
    are reported in the flags (with their exact residual) and the product is
    still evaluated, since the gradient term uses the classical spherical
    gradient either way.
    """
    dom = WeightedDomain.sphere(ctx.root_system)
    adm = f if isinstance(f, AdmissibleFunction) else _require_admissible(dom, f)
    if isinstance(f, AdmissibleFunction) and f.domain != dom:
        raise AdmissibilityError("admissible function built for another domain")
    g = adm.centered
    n = adm.norm_sq
    d = dom.dimension
    inv_residual = _invariance_residual(ctx, dom, g)
    sf = SphereFunction(g)
    grads0 = spherical_gradient_classical(sf)
    grad_sq = sum(
        (integrate_sphere(dom, c.rep * c.rep) for c in grads0), Q(0)
    ) / n
    if inv_residual == 0:
        gradsh = spherical_gradient_h(ctx, sf)
        grad_h_sq = sum(
            (integrate_sphere(dom, c.rep * c.rep) for c in gradsh), Q(0)
        ) / n
        if grad_h_sq != grad_sq:
            raise InternalInconsistencyError(
                "h-gradient disagrees with the classical gradient on invariant input"
            )
    per_axis = []
    for i in range(d):
        xi = MultiPoly.variable(d, i)
        per_axis.append(1 - integrate_sphere(dom, xi * g * g) / n)
    loc = min(per_axis)
    flags = {
        "zero_mean": True,
        "unit_norm": True,
        "invariant": inv_residual == 0,
        "invariance_residual": inv_residual,
    }
    return _finalize(
        "sphere-axes", loc, grad_sq, ctx.lam, Q(1), per_axis, flags
    )


# -- ball ---------------------------------------------------------------------


def _ball_first_moment(dom: WeightedDomain, g: MultiPoly, n: Q) -> list:
    d = dom.dimension
    return [
        integrate_ball(dom, MultiPoly.variable(d, i) * g * g) / n for i in range(d)
    ]


def _direction_set(d: int, samples: int, seed: int) -> list:
    """Plus/minus axis directions plus seeded random unit vectors (floats)."""
    import random

    dirs = []
    for i in range(d):
        e = [0.0] * d
        e[i] = 1.0
        dirs.append(tuple(e))
        e2 = list(e)
        e2[i] = -1.0
        dirs.append(tuple(e2))
    rng = random.Random(seed)
    for _ in range(samples):
        vec = [rng.gauss(0.0, 1.0) for _ in range(d)]
        norm = math.sqrt(sum(c * c for c in vec))
        if norm == 0:
            continue
        dirs.append(tuple(c / norm for c in vec))
    return dirs


def ball_uncertainty(
    dom: WeightedDomain,
    f,
    mode: str = MODE_INVARIANT_AXES,
    direction_samples: int = 64,
    seed: int = 0,
) -> UncertaintyResult:
    """Uncertainty product on the weighted ball.

    Modes:

    * ``invariant-axes``: minimum over coordinate axes, any reflection
      weight, requires group-invariant f (exact throughout);
    * ``classical-directions``: rotation-invariant weight only (all
      multiplicities zero), minimum over a sampled direction set extended by
      the exact optimizer v/|v| of the first-moment vector v, so the reported
      minimum matches the true directional minimum to float precision; a
      sound necessary check of the true-minimum bound;
    * ``corollary54``: like classical-directions but with the
      partial-derivative gradient term sum_i (1-x_i^2) |d_i f|^2 and the
      bound constant halved, since the pointwise comparison

          (1-|x|^2)|grad f|^2 + |grad_D f|^2 <= 2 sum_i (1-x_i^2) |d_i f|^2

      carries a factor 2 from (a-b)^2 <= 2(a^2+b^2); without it the
      comparison fails already for f = x1^2 - x2^2, whose angular square sum
      16 x1^2 x2^2 exceeds the unhalved right side 8 x1^2 x2^2.
    """
    if dom.shape != BALL:
        raise ValueError("ball_uncertainty needs a ball domain")
    adm = f if isinstance(f, AdmissibleFunction) else _require_admissible(dom, f)
    if isinstance(f, AdmissibleFunction) and f.domain != dom:
        raise AdmissibilityError("admissible function built for another domain")
    g = adm.centered
    n = adm.norm_sq
    d = dom.dimension
    lam = lambda_ball(dom)
    ctx = OperatorContext.for_system(dom.root_system)

    if mode == MODE_INVARIANT_AXES:
        residual = _invariance_residual(ctx, dom, g)
        if residual != 0:
            raise AdmissibilityError(
                "invariant-axes mode requires a group-invariant function"
            )
        per_axis = [1 - m for m in _ball_first_moment(dom, g, n)]
        loc = min(per_axis)
        grad_sq = ball_triple_norm_sq(dom, g) / n
        flags = {"zero_mean": True, "unit_norm": True, "invariant": True,
                 "invariance_residual": Q(0)}
        return _finalize(mode, loc, grad_sq, lam, Q(1), per_axis, flags)

    if mode not in (MODE_CLASSICAL_DIRECTIONS, MODE_COROLLARY54):
        raise ValueError(f"unknown ball uncertainty mode {mode!r}")
    if any(r.multiplicity != 0 for r in dom.root_system.positive_roots):
        raise AdmissibilityError(
            f"{mode} mode needs the rotation-invariant weight (zero multiplicities)"
        )
    moments = _ball_first_moment(dom, g, n)
    dirs = _direction_set(d, direction_samples, seed)
    norm_v = math.sqrt(sum(float(m) ** 2 for m in moments))
    if norm_v > 0:
        dirs.append(tuple(float(m) / norm_v for m in moments))
    per_dir = [1 - sum(float(m) * e for m, e in zip(moments, c)) for c in dirs]
    loc = min(per_dir)
    if mode == MODE_CLASSICAL_DIRECTIONS:
        grad_sq = ball_triple_norm_sq(dom, g) / n
    else:
        acc = MultiPoly.zero(d)
        for i in range(d):
            xi = MultiPoly.variable(d, i)
            acc = acc + (MultiPoly.one(d) - xi * xi) * g.diff(i) * g.diff(i)
        grad_sq = integrate_ball(dom, acc) / n
    flags = {"zero_mean": True, "unit_norm": True, "invariant": True,
             "invariance_residual": Q(0),
             "direction_minimum": "sampled+optimal (necessary check)"}
    scale = Q(1) if mode == MODE_CLASSICAL_DIRECTIONS else Q(1, 2)
    return _finalize(mode, loc, float(grad_sq), lam, scale, per_dir[: 2 * d], flags)


# -- simplex --------------------------------------------------------------------


def simplex_uncertainty(
    dom: WeightedDomain, f, mode: str = MODE_JACOBI
) -> UncertaintyResult:
    """Uncertainty product on the weighted simplex; bound is C(lam)/4.

    The localization factor 1 - sqrt(x_i) is integrated exactly through the
    ball pullback, where sqrt(x_i) becomes |x_i| and the even integrand
    reduces to half-integer shifted sphere moments (rational whenever the
    Gamma arguments pair up, high precision otherwise).
    """
    if dom.shape != SIMPLEX:
        raise ValueError("simplex_uncertainty needs a simplex domain")
    if mode not in (MODE_JACOBI, MODE_HYPEROCTAHEDRAL):
        raise ValueError(f"unknown simplex uncertainty mode {mode!r}")
    adm = f if isinstance(f, AdmissibleFunction) else _require_admissible(dom, f)
    if isinstance(f, AdmissibleFunction) and f.domain != dom:
        raise AdmissibilityError("admissible function built for another domain")
    g = adm.centered
    n = adm.norm_sq
    d = dom.dimension
    lam = lambda_ball(dom)
    flags = {"zero_mean": True, "unit_norm": True}
    if mode == MODE_HYPEROCTAHEDRAL:
        if not is_symmetric(g, permutation_group(d)):
            raise AdmissibilityError(
                "hyperoctahedral mode requires a permutation-symmetric function"
            )
        flags["symmetric"] = True
    per_axis = []
    for i in range(d):
        m = integrate_simplex_sqrt_axis(dom, g * g, i)
        if isinstance(m, Q):
            per_axis.append(1 - m / n)
        else:
            per_axis.append(1 - m / float(n))
    loc = min(per_axis, key=float)
    grad_sq = simplex_triple_norm_sq(dom, g) / n
    return _finalize(mode, loc, grad_sq, lam, Q(1, 4), per_axis, flags)


# -- proof-chain checks ---------------------------------------------------------


def gradient_lower_bound_holds(ctx: OperatorContext, adm: AdmissibleFunction):
    """Exact check of |grad_0 f|^2 >= 2 lam for admissible invariant f.

    Returns (holds, gradient_sq, sobolev_half_sq); the two quantities agree
    for invariant f, and both dominate 2 lam because the smallest eigenvalue
    on the mean-zero part is 1 + 2 lam.
    """
    from .harmonics import sobolev_half_norm_sq

    dom = WeightedDomain.sphere(ctx.root_system)
    sf = SphereFunction(adm.centered)
    grads = spherical_gradient_classical(sf)
    grad_sq = sum(
        (integrate_sphere(dom, c.rep * c.rep) for c in grads), Q(0)
    ) / adm.norm_sq
    sob = sobolev_half_norm_sq(ctx, sf) / adm.norm_sq
    lam = ctx.lam
    return (grad_sq >= 2 * lam and sob >= 2 * lam and sob == grad_sq, grad_sq, sob)


def first_moment_identity_residuals(ctx: OperatorContext, f: SphereFunction) -> list:
    """Componentwise residuals of the first-moment identity

        (2 lam + 1) int x_j |f|^2 h^2 = 2 int f (grad_S f)_j h^2,

    which holds for every f, invariant or not; all residuals must be zero.
    """
    dom = WeightedDomain.sphere(ctx.root_system)
    d = ctx.dimension
    grads = spherical_gradient_h(ctx, f)
    out = []
    for j in range(d):
        xj = MultiPoly.variable(d, j)
        lhs = (2 * ctx.lam + 1) * integrate_sphere(dom, xj * f.rep * f.rep)
        rhs = 2 * integrate_sphere(dom, f.rep * grads[j].rep)
        out.append(lhs - rhs)
    return out


def localization_bound_holds(dom: WeightedDomain, adm: AdmissibleFunction) -> bool:
    """Exact per-axis check of int (1 - x_i^2)|f|^2 <= (2 - r_i) r_i,
    equivalent to the Cauchy-Schwarz bound (int x_i |f|^2)^2 <= int x_i^2 |f|^2."""
    g = adm.centered
    n = adm.norm_sq
    d = dom.dimension
    for i in range(d):
        xi = MultiPoly.variable(d, i)
        m1 = integrate(dom, xi * g * g)
        m2 = integrate(dom, xi * xi * g * g)
        if m1 * m1 > m2 * n:
            return False
    return True


def axis_product_bound_holds(
    ctx: OperatorContext, adm: AdmissibleFunction
) -> bool:
    """Exact per-axis check of r_i |grad_0 f|^2 >= (lam+1/2)^2 (1-r_i)^2/(2-r_i)."""
    dom = WeightedDomain.sphere(ctx.root_system)
    sf = SphereFunction(adm.centered)
    grads = spherical_gradient_classical(sf)
    grad_sq = sum(
        (integrate_sphere(dom, c.rep * c.rep) for c in grads), Q(0)
    ) / adm.norm_sq
    lam = ctx.lam
    d = ctx.dimension
    for i in range(d):
        xi = MultiPoly.variable(d, i)
        r = 1 - integrate_sphere(dom, xi * sf.rep * sf.rep) / adm.norm_sq
        lhs = r * grad_sq
        rhs = (lam + Q(1, 2)) ** 2 * (1 - r) ** 2 / (2 - r)
        if lhs < rhs:
            return False
    return True
