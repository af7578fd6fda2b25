"""Differential-difference operators attached to a reflection group.

Ambient operators act on polynomials:

* ``difference_op_E``: E_v f = (f - f o sigma_v) / <x, v>, always a polynomial;
* ``dunkl``: D_j f = d_j f + sum_v kappa_v v_j E_v f;
* ``h_laplacian``: sum_j D_j^2, with an independently expanded explicit form;
* ``angular_classical`` / ``angular_dunkl``: x_i d_j - x_j d_i and its Dunkl
  analogue x_i D_j - x_j D_i.

Spherical operators act on canonical sphere restrictions and are defined per
homogeneous part through the polar decompositions of the gradient and the
h-Laplacian: for homogeneous P of degree n,

* spherical gradient:   grad_S(P|_S) = (grad_h P)|_S - n * xi * (P|_S),
* h-Laplace-Beltrami:   lap_S(P|_S)  = (lap_h P)|_S - n(n + 2 lam) * (P|_S),

extended linearly to arbitrary restrictions. Reducing inputs to canonical
form first makes the operators independent of the chosen polynomial
representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q

from .errors import DimensionMismatchError, InternalInconsistencyError, NotDivisibleError
from .groups import (
    DerivedConstants,
    Root,
    RootSystem,
    derived_constants,
    reflection_matrix,
)
from .poly import MultiPoly, SphereFunction


@dataclass(frozen=True)
class OperatorContext:
    """Root system plus its derived constants, shared by every operator."""

    root_system: RootSystem
    constants: DerivedConstants

    def __post_init__(self):
        fresh = derived_constants(self.root_system)
        if fresh != self.constants:
            raise InternalInconsistencyError(
                "derived constants do not match the root system"
            )

    @classmethod
    def for_system(cls, rs: RootSystem) -> "OperatorContext":
        return cls(rs, derived_constants(rs))

    @classmethod
    def trivial(cls, dimension: int) -> "OperatorContext":
        """Context with zero multiplicities (classical operators)."""
        return cls.for_system(RootSystem.z2d([0] * dimension))

    @property
    def dimension(self) -> int:
        return self.root_system.dimension

    @property
    def lam(self) -> Q:
        return self.constants.lambda_kappa

    def reflections(self):
        """(root, matrix) pairs, cached on first use."""
        cached = getattr(self, "_reflections", None)
        if cached is None:
            cached = tuple(
                (r, reflection_matrix(r.vector))
                for r in self.root_system.positive_roots
            )
            object.__setattr__(self, "_reflections", cached)
        return cached


def difference_op_E(ctx: OperatorContext, v: Root, f: MultiPoly) -> MultiPoly:
    """E_v f = (f - f o sigma_v) / <x, v>; zero on sigma_v-invariant input."""
    if v not in ctx.root_system.positive_roots:
        raise ValueError("root does not belong to the context's root system")
    return _e_v(reflection_matrix(v.vector), v.vector, f)


def _e_v(sigma, vector, f: MultiPoly) -> MultiPoly:
    num = f - f.compose_linear(sigma)
    if num.is_zero():
        return num
    try:
        return num.divide_by_linear(vector)
    except NotDivisibleError as exc:  # impossible: f - f o sigma_v is divisible
        raise InternalInconsistencyError(
            "difference quotient was not divisible by its linear form"
        ) from exc


def dunkl(ctx: OperatorContext, axis: int, f: MultiPoly) -> MultiPoly:
    """Dunkl operator along a 0-based axis."""
    if not 0 <= axis < ctx.dimension:
        raise DimensionMismatchError(f"axis {axis} out of range")
    out = f.diff(axis)
    for root, sigma in ctx.reflections():
        kv = root.multiplicity * root.vector[axis]
        if kv == 0:
            continue
        out = out + _e_v(sigma, root.vector, f).scale(kv)
    return out


def dunkl_gradient(ctx: OperatorContext, f: MultiPoly) -> tuple:
    """(D_1 f, ..., D_d f); shares the E_v f computations across axes."""
    d = ctx.dimension
    comps = [f.diff(j) for j in range(d)]
    for root, sigma in ctx.reflections():
        if root.multiplicity == 0:
            continue
        ev = _e_v(sigma, root.vector, f)
        if ev.is_zero():
            continue
        for j in range(d):
            kv = root.multiplicity * root.vector[j]
            if kv != 0:
                comps[j] = comps[j] + ev.scale(kv)
    return tuple(comps)


def h_laplacian(ctx: OperatorContext, f: MultiPoly) -> MultiPoly:
    """sum_j D_j(D_j f)."""
    out = MultiPoly.zero(ctx.dimension)
    for j in range(ctx.dimension):
        out = out + dunkl(ctx, j, dunkl(ctx, j, f))
    return out


def h_laplacian_explicit(ctx: OperatorContext, f: MultiPoly) -> MultiPoly:
    """Expanded form of the h-Laplacian, used as an independent cross-check.

    Per positive root the correction to the ordinary Laplacian is
    kappa_v * (2 <x,v> (v . grad f) - |v|^2 (f - f o sigma_v)) / <x,v>^2,
    a polynomial because the even and odd parts of f under sigma_v each make
    the numerator divisible by <x,v>^2.
    """
    d = ctx.dimension
    out = MultiPoly.zero(d)
    for j in range(d):
        out = out + f.diff(j).diff(j)
    grad = [f.diff(j) for j in range(d)]
    for root, sigma in ctx.reflections():
        if root.multiplicity == 0:
            continue
        v = root.vector
        v_dot_grad = MultiPoly.zero(d)
        for j in range(d):
            if v[j] != 0:
                v_dot_grad = v_dot_grad + grad[j].scale(v[j])
        form = MultiPoly.linear_form(v)
        num = form * v_dot_grad.scale(2) - (f - f.compose_linear(sigma)).scale(
            root.norm_sq
        )
        quot = num.divide_by_linear(v).divide_by_linear(v)
        out = out + quot.scale(root.multiplicity)
    return out


def angular_classical(i: int, j: int, f: MultiPoly) -> MultiPoly:
    """x_i d_j f - x_j d_i f (0-based axes, i != j)."""
    if i == j:
        raise ValueError("angular operator needs distinct axes")
    d = f.dimension
    xi = MultiPoly.variable(d, i)
    xj = MultiPoly.variable(d, j)
    return xi * f.diff(j) - xj * f.diff(i)


def angular_dunkl(ctx: OperatorContext, i: int, j: int, f: MultiPoly) -> MultiPoly:
    """x_i D_j f - x_j D_i f (0-based axes, i != j)."""
    if i == j:
        raise ValueError("angular operator needs distinct axes")
    d = ctx.dimension
    xi = MultiPoly.variable(d, i)
    xj = MultiPoly.variable(d, j)
    return xi * dunkl(ctx, j, f) - xj * dunkl(ctx, i, f)


def angular_difference(ctx: OperatorContext, i: int, j: int, f: MultiPoly) -> MultiPoly:
    """Difference part of the angular Dunkl operator:
    sum_v kappa_v (x_i v_j - x_j v_i) E_v f, so that
    angular_dunkl == angular_classical + angular_difference."""
    if i == j:
        raise ValueError("angular operator needs distinct axes")
    d = ctx.dimension
    xi = MultiPoly.variable(d, i)
    xj = MultiPoly.variable(d, j)
    out = MultiPoly.zero(d)
    for root, sigma in ctx.reflections():
        if root.multiplicity == 0:
            continue
        v = root.vector
        factor = xi.scale(v[j]) - xj.scale(v[i])
        if factor.is_zero():
            continue
        ev = _e_v(sigma, v, f)
        if not ev.is_zero():
            out = out + (factor * ev).scale(root.multiplicity)
    return out


# -- spherical operators -----------------------------------------------------


def _per_homogeneous(sf: SphereFunction, apply_part):
    """Apply a degree-graded rule to each homogeneous part of the canonical
    representative and re-reduce the sum."""
    total = MultiPoly.zero(sf.dimension)
    for n, part in sf.rep.homogeneous_parts():
        total = total + apply_part(n, part)
    return SphereFunction.from_poly(total)


def spherical_gradient_h(ctx: OperatorContext, sf: SphereFunction) -> tuple:
    """h-spherical gradient, one SphereFunction per component."""
    d = ctx.dimension
    if sf.dimension != d:
        raise DimensionMismatchError("sphere function dimension mismatch")
    comps = [MultiPoly.zero(d) for _ in range(d)]
    for n, part in sf.rep.homogeneous_parts():
        grad = dunkl_gradient(ctx, part)
        for j in range(d):
            comps[j] = comps[j] + grad[j] - MultiPoly.variable(d, j) * part.scale(n)
    return tuple(SphereFunction.from_poly(c) for c in comps)


def spherical_gradient_classical(sf: SphereFunction) -> tuple:
    """Classical spherical gradient (zero multiplicities)."""
    return spherical_gradient_h(OperatorContext.trivial(sf.dimension), sf)


def xi_dot_gradient(ctx: OperatorContext, sf: SphereFunction) -> SphereFunction:
    """Radial pairing xi . grad_S f = sum_v kappa_v (f - f o sigma_v)."""
    if sf.dimension != ctx.dimension:
        raise DimensionMismatchError("sphere function dimension mismatch")
    out = MultiPoly.zero(ctx.dimension)
    for root, sigma in ctx.reflections():
        if root.multiplicity == 0:
            continue
        out = out + (sf.rep - sf.rep.compose_linear(sigma)).scale(root.multiplicity)
    return SphereFunction.from_poly(out)


def laplace_beltrami_h(ctx: OperatorContext, sf: SphereFunction) -> SphereFunction:
    """h-Laplace-Beltrami operator on a sphere restriction."""
    if sf.dimension != ctx.dimension:
        raise DimensionMismatchError("sphere function dimension mismatch")
    lam = ctx.lam

    def rule(n: int, part: MultiPoly) -> MultiPoly:
        return h_laplacian(ctx, part) - part.scale(Q(n) * (n + 2 * lam))

    return _per_homogeneous(sf, rule)


def angular_dunkl_sphere(
    ctx: OperatorContext, i: int, j: int, sf: SphereFunction
) -> SphereFunction:
    """Angular Dunkl operator on a sphere restriction (degree preserving)."""
    return SphereFunction.from_poly(angular_dunkl(ctx, i, j, sf.rep))


def angular_classical_sphere(i: int, j: int, sf: SphereFunction) -> SphereFunction:
    return SphereFunction.from_poly(angular_classical(i, j, sf.rep))


def reflect_sphere(sf: SphereFunction, sigma) -> SphereFunction:
    """f o sigma for an orthogonal matrix sigma."""
    return sf.compose_linear(sigma)


def is_group_invariant(ctx: OperatorContext, f) -> bool:
    """Whether f o sigma_v == f for every generating reflection."""
    if isinstance(f, SphereFunction):
        return all(
            f.compose_linear(sigma) == f for _, sigma in ctx.reflections()
        )
    return all(f.compose_linear(sigma) == f for _, sigma in ctx.reflections())
