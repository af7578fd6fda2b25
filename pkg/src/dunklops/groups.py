"""Finite reflection groups given by positive root systems with multiplicities.

Points act as row vectors: the reflection along v sends x to
``x - 2<x,v> v / |v|^2`` and every group element is stored as a rational
matrix acting on the right, so composing group elements is plain matrix
multiplication. Roots are not normalized; all formulas carry ``|v|^2``
explicitly, so rescaling a root (keeping its multiplicity) changes nothing
downstream.

Two kinds of systems are supported:

* ``KIND_Z2D``: the sign-change group, positive roots are the standard basis
  vectors and multiplicities are arbitrary nonnegative rationals;
* ``KIND_GENERAL``: any positive root system, with nonnegative integer
  multiplicities so that the squared weight is a polynomial (exact
  integration needs this; see ``quadrature``).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatchError,
    GroupTooLargeError,
    InvalidRootError,
    UnsupportedTierError,
)
from .poly import MultiPoly

Vector = tuple
Matrix = tuple

KIND_Z2D = "z2d"
KIND_GENERAL = "general-integer"

GROUP_SIZE_CAP = 10**6


def _as_vector(v: Sequence) -> Vector:
    return tuple(Q(c) for c in v)


def dot(x: Sequence, y: Sequence) -> Q:
    if len(x) != len(y):
        raise DimensionMismatchError("dimension mismatch in inner product")
    return sum((Q(a) * Q(b) for a, b in zip(x, y)), Q(0))


@dataclass(frozen=True)
class Root:
    """A positive root with its nonnegative multiplicity."""

    vector: Vector
    multiplicity: Q

    def __post_init__(self):
        object.__setattr__(self, "vector", _as_vector(self.vector))
        object.__setattr__(self, "multiplicity", Q(self.multiplicity))
        if all(c == 0 for c in self.vector):
            raise InvalidRootError("root vector must be nonzero")
        if self.multiplicity < 0:
            raise InvalidRootError("multiplicity must be nonnegative")

    @property
    def norm_sq(self) -> Q:
        return dot(self.vector, self.vector)


@dataclass(frozen=True)
class DerivedConstants:
    """gamma = sum of multiplicities; lam = gamma + (d-2)/2."""

    gamma_kappa: Q
    lambda_kappa: Q


def reflection_matrix(v: Sequence) -> Matrix:
    """Matrix of the reflection along v, acting on row vectors."""
    v = _as_vector(v)
    nsq = dot(v, v)
    if nsq == 0:
        raise InvalidRootError("root vector must be nonzero")
    d = len(v)
    return tuple(
        tuple((Q(1) if i == j else Q(0)) - 2 * v[i] * v[j] / nsq for j in range(d))
        for i in range(d)
    )


def reflect(x: Sequence, v) -> Vector:
    """Image of the point x under the reflection along the root v."""
    vec = v.vector if isinstance(v, Root) else _as_vector(v)
    nsq = dot(vec, vec)
    if nsq == 0:
        raise InvalidRootError("root vector must be nonzero")
    x = _as_vector(x)
    factor = 2 * dot(x, vec) / nsq
    return tuple(xi - factor * vi for xi, vi in zip(x, vec))


def identity_matrix(d: int) -> Matrix:
    return tuple(tuple(Q(1) if i == j else Q(0) for j in range(d)) for i in range(d))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    d = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(d)), Q(0)) for j in range(d))
        for i in range(d)
    )


def apply_matrix(x: Sequence, m: Matrix) -> Vector:
    x = _as_vector(x)
    d = len(m)
    return tuple(sum((x[i] * m[i][j] for i in range(d)), Q(0)) for j in range(d))


def _primitive_line(v: Vector) -> Vector:
    """Canonical representative of the line through v: primitive, sign-fixed."""
    denom = 1
    for c in v:
        denom = denom * c.denominator // math.gcd(denom, c.denominator)
    ints = [int(c * denom) for c in v]
    g = math.gcd(*ints) if len(ints) > 1 else abs(ints[0])
    ints = [c // g for c in ints]
    for c in ints:
        if c != 0:
            if c < 0:
                ints = [-x for x in ints]
            break
    return tuple(ints)


@dataclass(frozen=True)
class RootSystem:
    """A fixed positive root system defining a finite reflection group."""

    dimension: int
    positive_roots: tuple
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "positive_roots", tuple(self.positive_roots))
        if self.dimension < 1:
            raise DimensionMismatchError("dimension must be positive")
        if self.kind not in (KIND_Z2D, KIND_GENERAL):
            raise InvalidRootError(f"unknown root system kind {self.kind!r}")
        for r in self.positive_roots:
            if len(r.vector) != self.dimension:
                raise DimensionMismatchError("root dimension mismatch")
        lines = [_primitive_line(r.vector) for r in self.positive_roots]
        if len(set(lines)) != len(lines):
            raise InvalidRootError("two positive roots are parallel")
        if self.kind == KIND_Z2D:
            basis = {
                tuple(1 if j == i else 0 for j in range(self.dimension))
                for i in range(self.dimension)
            }
            if set(lines) != basis:
                raise InvalidRootError(
                    "z2d kind requires exactly the standard basis directions"
                )

    # -- constructors --------------------------------------------------------

    @classmethod
    def z2d(cls, kappa: Sequence) -> "RootSystem":
        """Sign-change group on len(kappa) axes with the given multiplicities."""
        d = len(kappa)
        roots = tuple(
            Root(tuple(Q(1) if j == i else Q(0) for j in range(d)), Q(k))
            for i, k in enumerate(kappa)
        )
        return cls(d, roots, KIND_Z2D)

    @classmethod
    def general(
        cls,
        dimension: int,
        roots: Iterable[tuple],
        allow_fractional: bool = False,
    ) -> "RootSystem":
        """General root system from (vector, multiplicity) pairs.

        Multiplicities must be nonnegative integers unless allow_fractional
        is set; fractional general systems only support the Monte Carlo
        integration tier.
        """
        rs = cls(
            dimension,
            tuple(Root(_as_vector(v), Q(m)) for v, m in roots),
            KIND_GENERAL,
        )
        if not allow_fractional:
            for r in rs.positive_roots:
                if r.multiplicity.denominator != 1:
                    raise InvalidRootError(
                        "general root systems need integer multiplicities "
                        "(pass allow_fractional=True to defer to the MC tier)"
                    )
        return rs

    # -- queries --------------------------------------------------------------

    def kappa_diag(self) -> tuple:
        """Per-axis multiplicities for a z2d system."""
        if self.kind != KIND_Z2D:
            raise UnsupportedTierError("kappa_diag is only defined for z2d systems")
        out = [Q(0)] * self.dimension
        for r in self.positive_roots:
            axis = next(i for i, c in enumerate(r.vector) if c != 0)
            out[axis] = r.multiplicity
        return tuple(out)

    def has_integer_multiplicities(self) -> bool:
        return all(r.multiplicity.denominator == 1 for r in self.positive_roots)

    def is_sign_change_invariant(self) -> bool:
        """Whether the squared weight is invariant under every sign change."""
        if self.kind == KIND_Z2D:
            return True
        lines = {_primitive_line(r.vector): r.multiplicity for r in self.positive_roots}
        for i in range(self.dimension):
            flipped = {}
            for line, m in lines.items():
                img = tuple(-c if j == i else c for j, c in enumerate(line))
                flipped[_primitive_line(tuple(Q(c) for c in img))] = m
            if flipped != lines:
                return False
        return True


def derived_constants(rs: RootSystem) -> DerivedConstants:
    """Exact gamma (multiplicity sum) and lam = gamma + (d-2)/2."""
    gamma = sum((r.multiplicity for r in rs.positive_roots), Q(0))
    return DerivedConstants(gamma, gamma + Q(rs.dimension - 2, 2))


def generate_group(rs: RootSystem, cap: int = GROUP_SIZE_CAP) -> tuple:
    """Closure of the root reflections under composition, identity included.

    Elements are rational orthogonal matrices acting on row vectors, returned
    in a deterministic sorted order. Raises GroupTooLargeError beyond cap.
    """
    gens = [reflection_matrix(r.vector) for r in rs.positive_roots]
    seen = {identity_matrix(rs.dimension)}
    frontier = list(seen)
    while frontier:
        new = []
        for m in frontier:
            for g in gens:
                prod = mat_mul(m, g)
                if prod not in seen:
                    seen.add(prod)
                    new.append(prod)
                    if len(seen) > cap:
                        raise GroupTooLargeError(
                            f"group closure exceeded cap of {cap} elements"
                        )
        frontier = new
    return tuple(sorted(seen))


def validate_root_system(rs: RootSystem, cap: int = GROUP_SIZE_CAP) -> tuple:
    """Full validation requiring group generation; returns the group.

    Checks that the positive roots are stable (up to sign) under the group
    action and that conjugate roots carry equal multiplicities, conjugacy
    being computed as the orbit of the root lines under the group.
    """
    group = generate_group(rs, cap)
    lines = [_primitive_line(r.vector) for r in rs.positive_roots]
    index = {line: i for i, line in enumerate(lines)}
    # union-find over root indices
    parent = list(range(len(lines)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, r in enumerate(rs.positive_roots):
        for g in group:
            img = _primitive_line(apply_matrix(r.vector, g))
            j = index.get(img)
            if j is None:
                raise InvalidRootError(
                    "positive roots are not closed under the generated group; "
                    "the weight would not be group invariant"
                )
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    orbits: dict[int, list[int]] = {}
    for i in range(len(lines)):
        orbits.setdefault(find(i), []).append(i)
    for members in orbits.values():
        mults = {rs.positive_roots[i].multiplicity for i in members}
        if len(mults) > 1:
            raise InvalidRootError(
                "conjugate roots must carry equal multiplicities"
            )
    return group


def weight_h_squared(rs: RootSystem):
    """Exact description of the squared weight prod |<x,v>|^(2 kappa_v).

    For a z2d system, returns the per-axis exponent tuple (2*kappa_1, ...,
    2*kappa_d); for a general system with integer multiplicities, returns the
    expanded polynomial prod <x,v>^(2 kappa_v). Fractional multiplicities on
    a general system have no polynomial form.
    """
    if rs.kind == KIND_Z2D:
        return tuple(2 * k for k in rs.kappa_diag())
    if not rs.has_integer_multiplicities():
        raise UnsupportedTierError(
            "squared weight is a polynomial only for integer multiplicities"
        )
    out = MultiPoly.one(rs.dimension)
    for r in rs.positive_roots:
        if r.multiplicity == 0:
            continue
        form = MultiPoly.linear_form(r.vector)
        out = out * form ** (2 * int(r.multiplicity))
    return out


def weight_h_squared_value(rs: RootSystem, x: Sequence) -> float:
    """Float value of the squared weight at a point (absolute values inside)."""
    total = 1.0
    for r in rs.positive_roots:
        if r.multiplicity == 0:
            continue
        s = abs(float(sum(float(a) * float(b) for a, b in zip(x, r.vector))))
        total *= s ** (2 * float(r.multiplicity))
    return total


def signed_permutation_group(d: int) -> tuple:
    """All signed permutation matrices, as exact orthogonal matrices."""
    out = []
    for perm in itertools.permutations(range(d)):
        for signs in itertools.product((Q(1), Q(-1)), repeat=d):
            m = tuple(
                tuple(signs[i] if j == perm[i] else Q(0) for j in range(d))
                for i in range(d)
            )
            out.append(m)
    return tuple(sorted(out))


def permutation_group(d: int) -> tuple:
    """All coordinate permutation matrices."""
    out = []
    for perm in itertools.permutations(range(d)):
        m = tuple(
            tuple(Q(1) if j == perm[i] else Q(0) for j in range(d)) for i in range(d)
        )
        out.append(m)
    return tuple(sorted(out))
