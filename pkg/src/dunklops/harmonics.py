"""h-harmonic decomposition, orthogonal projections and spectral powers.

A homogeneous polynomial P of degree n splits uniquely (for nonnegative
multiplicities) as P = sum_j |x|^(2j) P_{n-2j} with every P_{n-2j} killed by
the h-Laplacian. The split is computed by exact triangular back-substitution:
for an h-harmonic Y of degree l the commutation rule

    lap_h^m ( |x|^(2j) Y ) = prod_{t<m} 4 (j-t) (l + j - t + lam) * |x|^(2(j-m)) Y

makes (lap_h^m P)_{m=0..n/2} a triangular linear system in the components,
whose diagonal entries are strictly positive whenever lam >= 0, so the
decomposition can never degenerate for admissible multiplicities.

Projections decompose every homogeneous part of a sphere restriction and
collect equal-degree harmonics; they realize the orthogonal projections onto
the spaces of h-spherical harmonics, which are eigenspaces of the
h-Laplace-Beltrami operator with eigenvalue -n(n + 2 lam).
"""

from __future__ import annotations

from fractions import Fraction as Q

from .errors import InternalInconsistencyError
from .operators import OperatorContext, h_laplacian
from .poly import MultiPoly, SphereFunction
from .quadrature import WeightedDomain, integrate_sphere


def _radial_shift_coeff(m: int, j: int, n: int, lam: Q) -> Q:
    """Coefficient in lap_h^m applied to |x|^(2j) times a degree n-2j harmonic."""
    out = Q(1)
    for t in range(m):
        out *= 4 * (j - t) * (n - j - t + lam)
    return out


DECOMPOSE_DEGREE_CAP = 10


def harmonic_decompose(
    ctx: OperatorContext, p: MultiPoly, degree_cap: int = DECOMPOSE_DEGREE_CAP
) -> list:
    """Split a homogeneous polynomial as [(j, P_{n-2j})] with h-harmonic parts.

    The reconstruction sum_j |x|^(2j) P_{n-2j} reproduces the input exactly;
    parts that vanish are omitted. Cost grows with the monomial count of the
    input degree, so degrees beyond ``degree_cap`` are refused unless the
    caller raises the cap explicitly.
    """
    if not p.is_homogeneous():
        raise ValueError("harmonic decomposition needs homogeneous input")
    if p.is_zero():
        return []
    if p.degree > degree_cap:
        raise ValueError(
            f"degree {p.degree} exceeds the decomposition cap {degree_cap}; "
            "pass degree_cap explicitly to go higher"
        )
    n = p.degree
    if n <= 1:
        return [(0, p)]
    lam = ctx.lam
    cap = n // 2
    powers = [p]
    while len(powers) <= cap and not powers[-1].is_zero():
        powers.append(h_laplacian(ctx, powers[-1]))
    zero = MultiPoly.zero(ctx.dimension)
    norm_sq = MultiPoly.norm_squared(ctx.dimension)
    parts: dict[int, MultiPoly] = {}
    for m in range(cap, -1, -1):
        rhs = powers[m] if m < len(powers) else zero
        for j in range(m + 1, cap + 1):
            comp = parts.get(j)
            if comp is None:
                continue
            coeff = _radial_shift_coeff(m, j, n, lam)
            rhs = rhs - (norm_sq ** (j - m) * comp).scale(coeff)
        diag = _radial_shift_coeff(m, m, n, lam)
        if diag == 0:
            raise InternalInconsistencyError(
                "triangular diagonal vanished at nonnegative multiplicities"
            )
        if not rhs.is_zero():
            parts[m] = rhs.scale(Q(1) / diag)
    out = sorted(parts.items())
    for _, comp in out:
        if not h_laplacian(ctx, comp).is_zero():
            raise InternalInconsistencyError("harmonic component failed the check")
    return out


def is_h_harmonic(ctx: OperatorContext, p: MultiPoly) -> bool:
    return h_laplacian(ctx, p).is_zero()


def harmonic_components(
    ctx: OperatorContext, f: SphereFunction, degree_cap: int = DECOMPOSE_DEGREE_CAP
) -> dict:
    """All nonzero projections of a sphere restriction, keyed by degree.

    Every homogeneous part of the canonical representative is decomposed and
    the degree-n harmonics are summed; on the sphere the radial factors
    |x|^(2j) are 1, so the components add back to f exactly.
    """
    out: dict[int, MultiPoly] = {}
    for m, part in f.rep.homogeneous_parts():
        for j, harm in harmonic_decompose(ctx, part, degree_cap):
            deg = m - 2 * j
            prev = out.get(deg)
            out[deg] = harm if prev is None else prev + harm
    return {deg: p for deg, p in out.items() if not p.is_zero()}


def proj(ctx: OperatorContext, f: SphereFunction, n: int) -> MultiPoly:
    """Degree-n h-harmonic component of f (zero polynomial when absent)."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return harmonic_components(ctx, f).get(n, MultiPoly.zero(ctx.dimension))


def neg_laplacian_power(ctx: OperatorContext, f: SphereFunction, r: int) -> SphereFunction:
    """sum_{n>=1} (n(n+2 lam))^r proj_n f as a sphere restriction.

    Exact for integer r (negative r inverts the spectrum on the mean-zero
    part); the r = 1/2 norm has its own exact squared form in
    ``sobolev_half_norm_sq``.
    """
    if not isinstance(r, int):
        raise ValueError("only integer powers are exact; see sobolev_half_norm_sq")
    lam = ctx.lam
    total = MultiPoly.zero(ctx.dimension)
    for n, comp in harmonic_components(ctx, f).items():
        if n == 0:
            continue
        eig = Q(n) * (n + 2 * lam)
        total = total + comp.scale(eig**r)
    return SphereFunction.from_poly(total)


def component_norm_sq(ctx: OperatorContext, comp: MultiPoly) -> Q:
    dom = WeightedDomain.sphere(ctx.root_system)
    return integrate_sphere(dom, comp * comp)


def sobolev_half_norm_sq(ctx: OperatorContext, f: SphereFunction) -> Q:
    """Exact squared norm of the half power: sum_n n(n+2 lam) |proj_n f|^2.

    Squaring keeps everything rational; for group-invariant f this equals
    the squared norm of the h-spherical gradient.
    """
    lam = ctx.lam
    total = Q(0)
    for n, comp in harmonic_components(ctx, f).items():
        if n == 0:
            continue
        total += Q(n) * (n + 2 * lam) * component_norm_sq(ctx, comp)
    return total


def parseval_norm_sq(ctx: OperatorContext, f: SphereFunction) -> Q:
    """sum_n |proj_n f|^2; equals the squared norm of f on polynomials."""
    return sum(
        (component_norm_sq(ctx, comp) for comp in harmonic_components(ctx, f).values()),
        Q(0),
    )
