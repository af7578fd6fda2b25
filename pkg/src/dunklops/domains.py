"""Sphere-ball-simplex correspondences, gradient norms and distances.

The three weighted domains are linked by two exact changes of variables:

* a ball function f lifts to the sphere one dimension up as
  F(x, x_{d+1}) = f(x), preserving the weighted L2 norm;
* a simplex function pulls back to the ball through the squaring map
  psi(x) = (x_1^2, ..., x_d^2), also preserving the norm.

On the ball the relevant first-order energy is the triple norm

    |||grad f|||^2 = b int (1-|x|^2) |grad f|^2 W dx
                   + b int sum_{i<j} |D_{i,j} f|^2 W dx,

whose two terms use the same normalization constant b of the base weight;
with that convention it equals the squared weighted norm of the classical
spherical gradient of the lift exactly, which the tests pin down. On the
simplex the analogous quantity uses the boundary factors
phi_i^2 = x_i (1 - |x|_1) and phi_ij^2 = x_i x_j, and satisfies
4 |||partial f|||^2 = |||grad (f o psi)|||^2.

Orthogonal polynomials for the ball weight are eigenfunctions of the second
order operator

    D_{kappa,mu} = lap_h - (x . grad)^2 - 2 lam_{kappa,mu} (x . grad),

with lam_{kappa,mu} = gamma + mu + (d-1)/2 and eigenvalue
-n(n + 2 lam_{kappa,mu}) in degree n. The sign of the drift term and the
subscript of the eigenvalue constant are fixed empirically by the
Gram-Schmidt eigenfunction tests: with a positive drift sign even the
degree-2 orthogonal polynomial fails to be an eigenfunction.
"""

from __future__ import annotations

import math
from fractions import Fraction as Q

from .errors import DimensionMismatchError
from .groups import derived_constants
from .operators import OperatorContext, angular_classical, h_laplacian
from .poly import MultiPoly, SphereFunction
from .quadrature import (
    BALL,
    SIMPLEX,
    WeightedDomain,
    integrate,
    integrate_ball,
    integrate_simplex,
    pullback_squaring,
)


def lift_to_sphere(f: MultiPoly) -> SphereFunction:
    """Lift a ball function to the sphere one dimension up (new axis unused)."""
    d = f.dimension
    lifted = MultiPoly(d + 1, {e + (0,): c for e, c in f.terms.items()})
    return SphereFunction.from_poly(lifted)


def pullback_simplex(f: MultiPoly) -> MultiPoly:
    """f o psi with psi(x) = (x_1^2, ..., x_d^2); always sign-change invariant."""
    return pullback_squaring(f)


def lambda_ball(dom: WeightedDomain) -> Q:
    """gamma + mu + (d-1)/2 for a ball or simplex domain."""
    if dom.shape not in (BALL, SIMPLEX):
        raise ValueError("lambda_ball needs a ball or simplex domain")
    gamma = derived_constants(dom.root_system).gamma_kappa
    return gamma + Q(dom.mu) + Q(dom.dimension - 1, 2)


def gradient_sq_sum(f: MultiPoly) -> MultiPoly:
    return sum(
        (f.diff(i) * f.diff(i) for i in range(f.dimension)),
        MultiPoly.zero(f.dimension),
    )


def angular_sq_sum(f: MultiPoly) -> MultiPoly:
    """sum_{i<j} (x_i d_j f - x_j d_i f)^2."""
    d = f.dimension
    out = MultiPoly.zero(d)
    for i in range(d):
        for j in range(i + 1, d):
            dij = angular_classical(i, j, f)
            out = out + dij * dij
    return out


def ball_triple_norm_sq(dom: WeightedDomain, f: MultiPoly):
    """|||grad f|||^2, exact; zero iff f is constant on the ball."""
    if dom.shape != BALL:
        raise ValueError("ball_triple_norm_sq needs a ball domain")
    d = dom.dimension
    if f.dimension != d:
        raise DimensionMismatchError("function dimension mismatch")
    one_minus = MultiPoly.one(d) - MultiPoly.norm_squared(d)
    return integrate_ball(dom, one_minus * gradient_sq_sum(f)) + integrate_ball(
        dom, angular_sq_sum(f)
    )


def simplex_triple_norm_sq(dom: WeightedDomain, f: MultiPoly):
    """|||partial f|||^2 with the boundary factors squared into the integrand."""
    if dom.shape != SIMPLEX:
        raise ValueError("simplex_triple_norm_sq needs a simplex domain")
    d = dom.dimension
    if f.dimension != d:
        raise DimensionMismatchError("function dimension mismatch")
    ones = MultiPoly.one(d)
    linear_sum = MultiPoly.linear_form([Q(1)] * d)
    total = None
    for i in range(d):
        phi_sq = MultiPoly.variable(d, i) * (ones - linear_sum)
        term = integrate_simplex(dom, phi_sq * f.diff(i) * f.diff(i))
        total = term if total is None else total + term
    for i in range(d):
        for j in range(i + 1, d):
            phi_sq = MultiPoly.variable(d, i) * MultiPoly.variable(d, j)
            dij = f.diff(i) - f.diff(j)
            total = total + integrate_simplex(dom, phi_sq * dij * dij)
    return total


def x_dot_grad(f: MultiPoly) -> MultiPoly:
    d = f.dimension
    return sum(
        (MultiPoly.variable(d, i) * f.diff(i) for i in range(d)),
        MultiPoly.zero(d),
    )


def d_kappa_mu(dom: WeightedDomain, f: MultiPoly) -> MultiPoly:
    """Second order eigenoperator of the ball weight (see module docstring)."""
    if dom.shape != BALL:
        raise ValueError("d_kappa_mu needs a ball domain")
    ctx = OperatorContext.for_system(dom.root_system)
    lam = lambda_ball(dom)
    xg = x_dot_grad(f)
    return h_laplacian(ctx, f) - x_dot_grad(xg) - xg.scale(2 * lam)


def ball_eigenvalue(dom: WeightedDomain, n: int) -> Q:
    """Eigenvalue of d_kappa_mu on degree-n orthogonal polynomials."""
    lam = lambda_ball(dom)
    return -Q(n) * (n + 2 * lam)


def _graded_monomials(d: int, max_degree: int):
    def gen(deg):
        if d == 1:
            yield (deg,)
            return
        for first in range(deg, -1, -1):
            for rest in gen_rest(deg - first, d - 1):
                yield (first,) + rest

    def gen_rest(deg, dims):
        if dims == 1:
            yield (deg,)
            return
        for first in range(deg, -1, -1):
            for rest in gen_rest(deg - first, dims - 1):
                yield (first,) + rest

    for deg in range(max_degree + 1):
        yield from gen(deg)


def gram_schmidt(dom: WeightedDomain, max_degree: int) -> list:
    """Exact Gram-Schmidt over the graded monomial basis.

    Returns (degree, polynomial) pairs; each output of degree n is orthogonal
    to every polynomial of lower degree, hence an orthogonal polynomial of
    degree n for the domain weight. Outputs are not normalized (norms are
    irrational in general); zero vectors cannot occur for a positive weight.
    """
    d = dom.dimension
    basis: list[tuple[int, MultiPoly, Q]] = []  # (degree, poly, norm_sq)
    for expo in _graded_monomials(d, max_degree):
        p = MultiPoly(d, {expo: Q(1)})
        for _, q, qn in basis:
            coeff = integrate(dom, p * q) / qn
            if coeff != 0:
                p = p - q.scale(coeff)
        nsq = integrate(dom, p * p)
        if nsq == 0:
            continue
        basis.append((sum(expo), p, nsq))
    return [(deg, p) for deg, p, _ in basis]


def symmetrize(f: MultiPoly, group_elements) -> MultiPoly:
    """Group average (1/|G|) sum_g f o g; idempotent projection."""
    total = MultiPoly.zero(f.dimension)
    count = 0
    for g in group_elements:
        total = total + f.compose_linear(g)
        count += 1
    if count == 0:
        raise ValueError("empty group")
    return total.scale(Q(1, count))


def is_symmetric(f: MultiPoly, group_elements) -> bool:
    return all(f.compose_linear(g) == f for g in group_elements)


def partial_gradient_bound_gap(f: MultiPoly) -> MultiPoly:
    """2 sum_i (1-x_i^2)(d_i f)^2 - (1-|x|^2)|grad f|^2 - sum_{i<j}|D_{i,j} f|^2.

    Nonnegative at every point of the closed unit ball (it equals
    |grad f|^2 + (x . grad f)^2 - 2 sum_i x_i^2 (d_i f)^2 identically); the
    factor 2 is necessary, as f = x1^2 - x2^2 shows.
    """
    d = f.dimension
    acc = MultiPoly.zero(d)
    for i in range(d):
        xi = MultiPoly.variable(d, i)
        acc = acc + (MultiPoly.one(d) - xi * xi) * f.diff(i) * f.diff(i)
    one_minus = MultiPoly.one(d) - MultiPoly.norm_squared(d)
    return acc.scale(2) - one_minus * gradient_sq_sum(f) - angular_sq_sum(f)


# -- intrinsic distances ------------------------------------------------------


def _clamped_arccos(t: float) -> float:
    return math.acos(min(1.0, max(-1.0, t)))


def distance_ball(x, y) -> float:
    """Geodesic distance the ball inherits from its covering sphere."""
    xx = [float(c) for c in x]
    yy = [float(c) for c in y]
    if len(xx) != len(yy):
        raise DimensionMismatchError("point dimensions differ")
    nx = sum(c * c for c in xx)
    ny = sum(c * c for c in yy)
    tol = 1e-9
    if nx > 1 + tol or ny > 1 + tol:
        raise ValueError("point outside the closed unit ball")
    if xx == yy:
        return 0.0
    inner = sum(a * b for a, b in zip(xx, yy))
    return _clamped_arccos(
        inner + math.sqrt(max(0.0, 1 - nx)) * math.sqrt(max(0.0, 1 - ny))
    )


def distance_simplex(x, y) -> float:
    """Distance on the simplex pulled back from the ball distance."""
    xx = [float(c) for c in x]
    yy = [float(c) for c in y]
    if len(xx) != len(yy):
        raise DimensionMismatchError("point dimensions differ")
    tol = 1e-9
    for pt in (xx, yy):
        if any(c < -tol for c in pt) or sum(pt) > 1 + tol:
            raise ValueError("point outside the closed simplex")
    if xx == yy:
        return 0.0
    inner = sum(math.sqrt(max(0.0, a) * max(0.0, b)) for a, b in zip(xx, yy))
    inner += math.sqrt(max(0.0, 1 - sum(xx)) * max(0.0, 1 - sum(yy)))
    return _clamped_arccos(inner)
