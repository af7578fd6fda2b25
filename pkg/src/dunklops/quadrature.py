"""Exact normalized integration on weighted spheres, balls and simplexes.

The workhorse is the closed form for normalized moments of the sign-change
weight on the unit sphere: with kappa_i >= 0 and exponents e_i >= 0,

    I(e) = integral of prod |x_i|^(e_i) * prod |x_i|^(2 kappa_i) dsigma
           normalized by the same integral with e = 0,

which equals a quotient of Gamma factors,

    I(e) = prod Gamma(kappa_i + (e_i+1)/2) * Gamma(gamma + d/2)
           / ( Gamma(gamma + (|e|+d)/2) * prod Gamma(kappa_i + 1/2) ).

For even exponents e_i = 2 b_i every Gamma pair cancels into a rational
Pochhammer quotient prod (kappa_i + 1/2)_{b_i} / (gamma + d/2)_{|b|}; this is
validated against the Monte Carlo oracle in the test suite. Odd exponents on
an axis (used for sqrt moments on the simplex) shift arguments by one half;
the quotient is still exact whenever the shifted arguments pair up modulo
integers and falls back to a high precision mpmath value otherwise.

Integration tiers:

* Tier A: sign-change weights with arbitrary rational multiplicities, via
  the moment formula directly;
* Tier B: general root systems with integer multiplicities, by expanding the
  polynomial squared weight into the integrand and normalizing by the
  integral of the weight itself;
* Tier C: the seeded Monte Carlo oracle ``mc_integrate``, which works for
  every weight (including fractional general multiplicities) and serves as
  the independent cross-check for both exact tiers.

Ball integrals are computed by lifting to the sphere one dimension up, with
the extra axis carrying multiplicity mu; simplex integrals pull back to the
ball through the squaring map. The constant 1 integrates to 1 on every
domain by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache
from typing import Callable, Sequence, Union

import mpmath
import numpy as np

from .errors import DimensionMismatchError, UnsupportedTierError
from .groups import KIND_Z2D, RootSystem, weight_h_squared
from .poly import MultiPoly

MPMATH_DPS = 60

SPHERE = "sphere"
BALL = "ball"
SIMPLEX = "simplex"

Value = Union[Q, mpmath.mpf]


# -- Gamma quotients ----------------------------------------------------------


def gamma_quotient(num: Sequence[Q], den: Sequence[Q]) -> Value:
    """prod Gamma(num_i) / prod Gamma(den_j), exact when it is rational.

    Arguments are grouped by their fractional part; within a group, Gamma
    factors cancel pairwise into rational rising factorials. Groups with
    unbalanced counts leave a genuinely transcendental quotient, evaluated
    with mpmath at high precision.
    """
    groups: dict[Q, tuple[list[Q], list[Q]]] = {}
    for a in num:
        groups.setdefault(a % 1, ([], []))[0].append(a)
    for b in den:
        groups.setdefault(b % 1, ([], []))[1].append(b)
    exact = Q(1)
    leftover_num: list[Q] = []
    leftover_den: list[Q] = []
    for frac_part, (ns, ds) in sorted(groups.items()):
        ns.sort()
        ds.sort()
        common = min(len(ns), len(ds))
        for a, b in zip(ns[:common], ds[:common]):
            exact *= _gamma_ratio(a, b)
        leftover_num.extend(ns[common:])
        leftover_den.extend(ds[common:])
    if not leftover_num and not leftover_den:
        return exact
    with mpmath.workdps(MPMATH_DPS):
        val = mpmath.mpf(exact.numerator) / exact.denominator
        for a in leftover_num:
            val *= mpmath.gamma(mpmath.mpf(a.numerator) / a.denominator)
        for b in leftover_den:
            val /= mpmath.gamma(mpmath.mpf(b.numerator) / b.denominator)
        return val


def _gamma_ratio(a: Q, b: Q) -> Q:
    """Gamma(a)/Gamma(b) for a - b a (possibly negative) integer."""
    shift = a - b
    if shift.denominator != 1:
        raise ValueError("gamma ratio needs an integer shift")
    n = int(shift)
    out = Q(1)
    if n >= 0:
        for k in range(n):
            out *= b + k
    else:
        for k in range(-n):
            out /= a + k
    return out


# -- sphere moments -----------------------------------------------------------


@lru_cache(maxsize=None)
def _abs_moment(d: int, kappa: tuple, expo: tuple) -> Value:
    gamma = sum(kappa, Q(0))
    total = sum(expo, Q(0))
    num = [k + (e + 1) / 2 for k, e in zip(kappa, expo)]
    num.append(gamma + Q(d, 2))
    den = [k + Q(1, 2) for k in kappa]
    den.append(gamma + (total + d) / 2)
    return gamma_quotient(num, den)


def sphere_monomial_integral(
    d: int,
    kappa_diag: Sequence,
    alpha: Sequence[int],
    abs_axes: frozenset = frozenset(),
) -> Value:
    """Normalized moment of x^alpha (times |x_i| for i in abs_axes) against
    the sign-change weight with per-axis multiplicities kappa_diag.

    Zero when any alpha_i is odd (sign antisymmetry); exact rational for
    even moments. Raises on negative multiplicities.
    """
    if len(kappa_diag) != d or len(alpha) != d:
        raise DimensionMismatchError("kappa/alpha length does not match dimension")
    kappa = tuple(Q(k) for k in kappa_diag)
    if any(k < 0 for k in kappa):
        raise ValueError("multiplicities must be nonnegative")
    if any(a % 2 for a in alpha):
        return Q(0)
    expo = tuple(Q(a + (1 if i in abs_axes else 0)) for i, a in enumerate(alpha))
    return _abs_moment(d, kappa, expo)


# -- weighted domains ---------------------------------------------------------


@dataclass(frozen=True)
class _SphereWeight:
    """Internal: diagonal exponents plus an optional polynomial factor."""

    d: int
    kappa_diag: tuple
    poly_factor: MultiPoly | None

    def moment(self, f: MultiPoly, abs_axes: frozenset = frozenset()) -> Value:
        if f.dimension != self.d:
            raise DimensionMismatchError("integrand dimension mismatch")
        if self.poly_factor is not None:
            f = f * self.poly_factor
        total: Value = Q(0)
        for e, c in f.terms.items():
            m = sphere_monomial_integral(self.d, self.kappa_diag, e, abs_axes)
            if m != 0:
                total = total + c * m
        if self.poly_factor is None:
            return total
        return total / self._normalizer()

    def _normalizer(self) -> Value:
        cached = getattr(self, "_norm_cache", None)
        if cached is None:
            cached = Q(0)
            for e, c in self.poly_factor.terms.items():
                m = sphere_monomial_integral(self.d, self.kappa_diag, e)
                if m != 0:
                    cached = cached + c * m
            object.__setattr__(self, "_norm_cache", cached)
        return cached


@dataclass(frozen=True)
class WeightedDomain:
    """Sphere, ball or simplex carrying a reflection-invariant weight.

    The sphere weight is the squared root-system weight; the ball adds the
    factor (1 - |x|^2)^(mu - 1/2); the simplex weight is the pushforward of
    the ball weight through the squaring map. All integrals are normalized
    so the constant 1 integrates to 1.
    """

    shape: str
    root_system: RootSystem
    mu: Q | None = None

    def __post_init__(self):
        if self.shape not in (SPHERE, BALL, SIMPLEX):
            raise ValueError(f"unknown domain shape {self.shape!r}")
        if self.shape == SPHERE:
            if self.mu is not None:
                raise ValueError("sphere domains carry no mu parameter")
            if self.root_system.dimension < 2:
                raise DimensionMismatchError("sphere needs dimension >= 2")
        else:
            if self.mu is None or Q(self.mu) < 0:
                raise ValueError("ball/simplex domains need mu >= 0")
            object.__setattr__(self, "mu", Q(self.mu))
        if self.shape == SIMPLEX and not self.root_system.is_sign_change_invariant():
            raise ValueError(
                "simplex weights need a sign-change invariant root system"
            )

    @classmethod
    def sphere(cls, rs: RootSystem) -> "WeightedDomain":
        return cls(SPHERE, rs)

    @classmethod
    def ball(cls, rs: RootSystem, mu) -> "WeightedDomain":
        return cls(BALL, rs, Q(mu))

    @classmethod
    def simplex(cls, rs: RootSystem, mu) -> "WeightedDomain":
        return cls(SIMPLEX, rs, Q(mu))

    @property
    def dimension(self) -> int:
        return self.root_system.dimension

    def _weight(self) -> _SphereWeight:
        """Sphere-weight description (after the ball/simplex lift)."""
        cached = getattr(self, "_weight_cache", None)
        if cached is not None:
            return cached
        rs = self.root_system
        d = rs.dimension
        if rs.kind == KIND_Z2D:
            diag = list(rs.kappa_diag())
            poly = None
        elif rs.has_integer_multiplicities():
            diag = [Q(0)] * d
            poly = weight_h_squared(rs)
        else:
            raise UnsupportedTierError(
                "no exact tier for fractional multiplicities on a general root "
                "system; use mc_integrate"
            )
        if self.shape != SPHERE:
            diag.append(Q(self.mu))
            if poly is not None:
                poly = _extend_dims(poly, d + 1)
        weight = _SphereWeight(len(diag), tuple(diag), poly)
        object.__setattr__(self, "_weight_cache", weight)
        return weight


def _extend_dims(p: MultiPoly, d: int) -> MultiPoly:
    return MultiPoly(d, {e + (0,) * (d - p.dimension): c for e, c in p.terms.items()})


def integrate_sphere(dom: WeightedDomain, f) -> Value:
    """Normalized integral of a polynomial over the weighted sphere."""
    if dom.shape != SPHERE:
        raise ValueError("integrate_sphere needs a sphere domain")
    p = f.rep if hasattr(f, "rep") else f
    return dom._weight().moment(p)


def integrate_ball(dom: WeightedDomain, f: MultiPoly) -> Value:
    """Normalized integral over the weighted ball, via the sphere lift.

    The ball integral against h^2 (1-|x|^2)^(mu-1/2) equals the sphere
    integral one dimension up against h^2 |x_{d+1}|^(2 mu) of the lifted
    integrand, which is independent of the new axis.
    """
    if dom.shape != BALL:
        raise ValueError("integrate_ball needs a ball domain")
    return dom._weight().moment(_extend_dims(f, dom.dimension + 1))


def integrate_ball_abs_axis(dom: WeightedDomain, f: MultiPoly, axis: int) -> Value:
    """Normalized ball integral of |x_axis| * f; exact when the shifted
    Gamma arguments pair up, high precision mpmath value otherwise."""
    if dom.shape != BALL:
        raise ValueError("integrate_ball_abs_axis needs a ball domain")
    if not 0 <= axis < dom.dimension:
        raise DimensionMismatchError("axis out of range")
    return dom._weight().moment(
        _extend_dims(f, dom.dimension + 1), abs_axes=frozenset({axis})
    )


def pullback_squaring(f: MultiPoly) -> MultiPoly:
    """f(x_1^2, ..., x_d^2): the simplex-to-ball change of variables."""
    return MultiPoly(f.dimension, {tuple(2 * k for k in e): c for e, c in f.terms.items()})


def ball_domain_of_simplex(dom: WeightedDomain) -> WeightedDomain:
    if dom.shape != SIMPLEX:
        raise ValueError("expected a simplex domain")
    return WeightedDomain.ball(dom.root_system, dom.mu)


def integrate_simplex(dom: WeightedDomain, f: MultiPoly) -> Value:
    """Normalized integral over the weighted simplex, by pulling the
    integrand back to the ball through the squaring map."""
    if dom.shape != SIMPLEX:
        raise ValueError("integrate_simplex needs a simplex domain")
    return integrate_ball(ball_domain_of_simplex(dom), pullback_squaring(f))


def integrate_simplex_sqrt_axis(dom: WeightedDomain, f: MultiPoly, axis: int) -> Value:
    """Normalized simplex integral of sqrt(x_axis) * f.

    Under the squaring pullback sqrt(x_axis) becomes |x_axis| on the ball,
    and the even integrand reduces to half-integer shifted sphere moments.
    """
    if dom.shape != SIMPLEX:
        raise ValueError("integrate_simplex_sqrt_axis needs a simplex domain")
    return integrate_ball_abs_axis(
        ball_domain_of_simplex(dom), pullback_squaring(f), axis
    )


def integrate(dom: WeightedDomain, f) -> Value:
    """Normalized integral on any domain kind."""
    if dom.shape == SPHERE:
        return integrate_sphere(dom, f)
    if dom.shape == BALL:
        return integrate_ball(dom, f)
    return integrate_simplex(dom, f)


# -- Monte Carlo oracle -------------------------------------------------------


@dataclass(frozen=True)
class McEstimate:
    """Seeded Monte Carlo estimate of a normalized integral."""

    mean: float
    stderr: float
    n_samples: int
    seed: int

    def agrees_with(self, exact, sigmas: float = 4.0) -> bool:
        slack = sigmas * self.stderr + 1e-12
        return abs(self.mean - float(exact)) <= slack


_MC_BLOCK = 1 << 15


def _weight_values(rs: RootSystem, pts: np.ndarray) -> np.ndarray:
    w = np.ones(len(pts))
    for r in rs.positive_roots:
        if r.multiplicity == 0:
            continue
        dots = np.abs(pts[:, : rs.dimension] @ np.array([float(c) for c in r.vector]))
        w *= dots ** (2.0 * float(r.multiplicity))
    return w


def poly_evaluator(p: MultiPoly) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorized float evaluation of a polynomial on an (n, d) array."""
    coeffs = np.array([float(c) for c in p.terms.values()])
    expos = np.array([e for e in p.terms.keys()], dtype=np.int64)

    def ev(pts: np.ndarray) -> np.ndarray:
        if p.is_zero():
            return np.zeros(len(pts))
        return (pts[:, None, :] ** expos[None, :, :]).prod(axis=2) @ coeffs

    return ev


def mc_integrate(dom: WeightedDomain, f, n: int, seed: int) -> McEstimate:
    """Monte Carlo estimate of the normalized integral of f on the domain.

    Sampling is uniform on the sphere (normalized Gaussians); ball and
    simplex integrands are lifted to the sphere one dimension up, which
    avoids evaluating the boundary-singular ball density at mu = 0. The
    estimate is the ratio of sample means E[f w] / E[w] with w the weight
    density, its standard error from the delta method. Samples are drawn in
    fixed-size blocks keyed by (seed, block index) with the counter-based
    Philox generator, so the result is reproducible and independent of how
    blocks would be distributed over workers.

    ``f`` may be a MultiPoly on the domain or a callable mapping an (n, d)
    float array of domain points to values.
    """
    if n < 2:
        raise ValueError("need at least two samples")
    d = dom.dimension
    sphere_dim = d if dom.shape == SPHERE else d + 1
    if isinstance(f, MultiPoly):
        if f.dimension != d:
            raise DimensionMismatchError("integrand dimension mismatch")
        fev = poly_evaluator(f)
    elif hasattr(f, "rep"):
        fev = poly_evaluator(f.rep)
    else:
        fev = f
    mu2 = 2.0 * float(dom.mu) if dom.shape != SPHERE else 0.0

    sums = np.zeros(5)  # sum w, sum fw, sum w^2, sum (fw)^2, sum w*fw
    done = 0
    block = 0
    while done < n:
        take = min(_MC_BLOCK, n - done)
        rng = np.random.Generator(np.random.Philox(key=[seed, block]))
        x = rng.standard_normal((take, sphere_dim))
        x /= np.linalg.norm(x, axis=1, keepdims=True)
        w = _weight_values(dom.root_system, x)
        if dom.shape != SPHERE and mu2 != 0.0:
            w *= np.abs(x[:, -1]) ** mu2
        pts = x[:, :d]
        if dom.shape == SIMPLEX:
            pts = pts**2
        fw = fev(pts) * w
        if not (np.all(np.isfinite(w)) and np.all(np.isfinite(fw))):
            raise ValueError("non-finite Monte Carlo samples")
        sums += np.array(
            [w.sum(), fw.sum(), (w * w).sum(), (fw * fw).sum(), (w * fw).sum()]
        )
        done += take
        block += 1
    sw, sfw, sww, sff, swf = sums
    wbar = sw / n
    mean = sfw / sw
    # delta method: Var(A/B) ~ Var(a - R b) / (n * E[b]^2)
    resid_sq = (sff - 2.0 * mean * swf + mean * mean * sww) / n
    stderr = math.sqrt(max(resid_sq, 0.0) / n) / wbar
    return McEstimate(mean=float(mean), stderr=float(stderr), n_samples=n, seed=seed)


def mc_integrate_simplex_direct(
    dom: WeightedDomain, f, n: int, seed: int
) -> McEstimate:
    """Simplex Monte Carlo with direct uniform sampling (no ball pullback).

    Points are drawn uniformly on the simplex via sorted-uniform spacings and
    weighted by the simplex density itself: the square-root pushforward of
    the squared root-system weight, times the per-coordinate 1/sqrt factors
    and the boundary factor. This is an independent cross-check of the
    pullback route in ``mc_integrate``; the mild inverse-square-root
    singularities keep finite variance.
    """
    if n < 2:
        raise ValueError("need at least two samples")
    d = dom.dimension
    if dom.shape != SIMPLEX:
        raise ValueError("mc_integrate_simplex_direct needs a simplex domain")
    if isinstance(f, MultiPoly):
        fev = poly_evaluator(f)
    else:
        fev = f
    mu = float(dom.mu)
    sums = np.zeros(5)
    done = 0
    block = 0
    while done < n:
        take = min(_MC_BLOCK, n - done)
        # offset key stream so blocks never collide with the pullback sampler
        rng = np.random.Generator(np.random.Philox(key=[seed + 0x9E3779B9, block]))
        u = np.sort(rng.random((take, d)), axis=1)
        pts = np.diff(np.concatenate(
            [np.zeros((take, 1)), u], axis=1), axis=1)  # uniform on the simplex
        rest = 1.0 - pts.sum(axis=1)
        roots = np.sqrt(np.maximum(pts, 0.0))
        w = _weight_values(dom.root_system, roots)
        w *= np.prod(np.maximum(roots, 1e-300), axis=1) ** -1.0
        w *= np.maximum(rest, 1e-300) ** (mu - 0.5)
        fw = fev(pts) * w
        if not (np.all(np.isfinite(w)) and np.all(np.isfinite(fw))):
            raise ValueError("non-finite Monte Carlo samples")
        sums += np.array(
            [w.sum(), fw.sum(), (w * w).sum(), (fw * fw).sum(), (w * fw).sum()]
        )
        done += take
        block += 1
    sw, sfw, sww, sff, swf = sums
    wbar = sw / n
    mean = sfw / sw
    resid_sq = (sff - 2.0 * mean * swf + mean * mean * sww) / n
    stderr = math.sqrt(max(resid_sq, 0.0) / n) / wbar
    return McEstimate(mean=float(mean), stderr=float(stderr), n_samples=n, seed=seed)
