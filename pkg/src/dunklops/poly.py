"""Sparse multivariate polynomials over exact rationals.

Coefficients are ``fractions.Fraction`` throughout; floats only appear when a
polynomial is evaluated at a float point. Besides ring arithmetic the module
provides the two primitives the operator calculus is built on:

* exact division by a linear form ``<x, v>`` (``MultiPoly.divide_by_linear``),
* canonical reduction modulo the unit-sphere ideal ``(x1^2+...+xd^2 - 1)``
  (``MultiPoly.reduce_mod_sphere``), which yields a unique representative of
  the restriction of a polynomial to the unit sphere.

Axes are 0-based in code; the text form uses 1-based names ``x1 .. xd``.
"""

from __future__ import annotations

import re
from fractions import Fraction as Q
from numbers import Rational
from typing import Mapping, Sequence, Union

from .errors import DimensionMismatchError, NotDivisibleError

Expo = tuple  # exponent multi-index, tuple[int, ...]
Scalar = Union[int, Q]


def _as_coeff(c) -> Q:
    if isinstance(c, Q):
        return c
    if isinstance(c, Rational):
        return Q(c)
    raise TypeError(f"expected a rational coefficient, got {type(c).__name__}")


class MultiPoly:
    """Polynomial in ``dimension`` variables, stored as {exponent: coefficient}.

    The term map never stores zero coefficients; the zero polynomial is the
    empty map. Instances are immutable by convention: no method mutates
    ``terms`` after construction.
    """

    __slots__ = ("dimension", "terms")

    def __init__(self, dimension: int, terms: Mapping[Expo, Scalar] | None = None):
        if dimension < 1:
            raise DimensionMismatchError("dimension must be a positive integer")
        clean: dict[Expo, Q] = {}
        for expo, coeff in (terms or {}).items():
            expo = tuple(int(e) for e in expo)
            if len(expo) != dimension:
                raise DimensionMismatchError(
                    f"exponent {expo} does not match dimension {dimension}"
                )
            if any(e < 0 for e in expo):
                raise ValueError(f"negative exponent in {expo}")
            c = _as_coeff(coeff)
            if c != 0:
                clean[expo] = c
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dimension: int) -> "MultiPoly":
        return cls(dimension, {})

    @classmethod
    def constant(cls, dimension: int, c: Scalar) -> "MultiPoly":
        return cls(dimension, {(0,) * dimension: _as_coeff(c)})

    @classmethod
    def one(cls, dimension: int) -> "MultiPoly":
        return cls.constant(dimension, 1)

    @classmethod
    def variable(cls, dimension: int, axis: int) -> "MultiPoly":
        """The monomial x_axis (0-based axis)."""
        if not 0 <= axis < dimension:
            raise DimensionMismatchError(f"axis {axis} out of range for d={dimension}")
        expo = tuple(1 if i == axis else 0 for i in range(dimension))
        return cls(dimension, {expo: Q(1)})

    @classmethod
    def linear_form(cls, coeffs: Sequence[Scalar]) -> "MultiPoly":
        """sum_i coeffs[i] * x_i."""
        d = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = _as_coeff(c)
            if c != 0:
                terms[tuple(1 if j == i else 0 for j in range(d))] = c
        return cls(d, terms)

    @classmethod
    def norm_squared(cls, dimension: int) -> "MultiPoly":
        """x1^2 + ... + xd^2."""
        terms = {}
        for i in range(dimension):
            terms[tuple(2 if j == i else 0 for j in range(dimension))] = Q(1)
        return cls(dimension, terms)

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def constant_term(self) -> Q:
        return self.terms.get((0,) * self.dimension, Q(0))

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.dimension == other.dimension and self.terms == other.terms
        if isinstance(other, Rational):
            return self == MultiPoly.constant(self.dimension, Q(other))
        return NotImplemented

    __hash__ = None  # mutable-looking mapping inside; not intended as a dict key

    def __repr__(self) -> str:
        return f"MultiPoly({self.dimension}, {format_poly(self)!r})"

    # -- ring arithmetic ---------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.dimension != self.dimension:
                raise DimensionMismatchError(
                    f"dimension mismatch: {self.dimension} vs {other.dimension}"
                )
            return other
        if isinstance(other, Rational):
            return MultiPoly.constant(self.dimension, Q(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Q(0)) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly(self.dimension, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.dimension, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational) and not isinstance(other, MultiPoly):
            return self.scale(Q(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Expo, Q] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Q(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly(self.dimension, out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "MultiPoly":
        c = _as_coeff(c)
        if c == 0:
            return MultiPoly.zero(self.dimension)
        return MultiPoly(self.dimension, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.one(self.dimension)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- calculus ----------------------------------------------------------

    def diff(self, axis: int) -> "MultiPoly":
        """Exact partial derivative along a 0-based axis."""
        if not 0 <= axis < self.dimension:
            raise DimensionMismatchError(f"axis {axis} out of range for d={self.dimension}")
        out: dict[Expo, Q] = {}
        for e, c in self.terms.items():
            k = e[axis]
            if k == 0:
                continue
            ne = e[:axis] + (k - 1,) + e[axis + 1 :]
            s = out.get(ne, Q(0)) + c * k
            if s:
                out[ne] = s
            else:
                out.pop(ne, None)
        return MultiPoly(self.dimension, out)

    def compose_linear(self, matrix: Sequence[Sequence[Scalar]]) -> "MultiPoly":
        """Exact f(xM) for a square matrix M acting on row vectors.

        Variable j of f is substituted by the linear form given by column j
        of M. Monomial matrices (at most one nonzero per column, which covers
        all sign changes and signed permutations) take a fast path.
        """
        d = self.dimension
        if len(matrix) != d or any(len(row) != d for row in matrix):
            raise DimensionMismatchError("matrix shape does not match dimension")
        cols = [[_as_coeff(matrix[i][j]) for i in range(d)] for j in range(d)]
        monomial_cols = []
        for col in cols:
            nz = [(i, c) for i, c in enumerate(col) if c != 0]
            if len(nz) > 1:
                monomial_cols = None
                break
            monomial_cols.append(nz[0] if nz else None)
        if monomial_cols is not None:
            out: dict[Expo, Q] = {}
            for e, c in self.terms.items():
                ne = [0] * d
                coeff = c
                dead = False
                for j, k in enumerate(e):
                    if k == 0:
                        continue
                    if monomial_cols[j] is None:
                        dead = True
                        break
                    i, cv = monomial_cols[j]
                    ne[i] += k
                    coeff *= cv**k
                if dead or coeff == 0:
                    continue
                key = tuple(ne)
                s = out.get(key, Q(0)) + coeff
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
            return MultiPoly(d, out)
        # general substitution; cache powers of each column form
        col_polys = [MultiPoly.linear_form(col) for col in cols]
        powers: list[list[MultiPoly]] = [[MultiPoly.one(d)] for _ in range(d)]
        result = MultiPoly.zero(d)
        for e, c in self.terms.items():
            factor = MultiPoly.constant(d, c)
            for j, k in enumerate(e):
                if k == 0:
                    continue
                cache = powers[j]
                while len(cache) <= k:
                    cache.append(cache[-1] * col_polys[j])
                factor = factor * cache[k]
            result = result + factor
        return result

    def evaluate(self, point: Sequence):
        """Value at a point; exact for rational inputs, float otherwise."""
        if len(point) != self.dimension:
            raise DimensionMismatchError("point length does not match dimension")
        exact = all(isinstance(x, Rational) for x in point)
        coords = [Q(x) if exact else float(x) for x in point]
        total = Q(0) if exact else 0.0
        for e, c in self.terms.items():
            v = c if exact else float(c)
            for x, k in zip(coords, e):
                if k:
                    v *= x**k
            total += v
        return total

    def homogeneous_parts(self) -> list[tuple[int, "MultiPoly"]]:
        """Decompose into homogeneous parts, sorted by degree.

        The parts sum back to the original polynomial exactly; the zero
        polynomial yields an empty list.
        """
        buckets: dict[int, dict[Expo, Q]] = {}
        for e, c in self.terms.items():
            buckets.setdefault(sum(e), {})[e] = c
        return [
            (deg, MultiPoly(self.dimension, terms))
            for deg, terms in sorted(buckets.items())
        ]

    # -- exact division and sphere reduction --------------------------------

    def divide_by_linear(self, v: Sequence[Scalar]) -> "MultiPoly":
        """Exact quotient q with q * <x, v> == self.

        Raises NotDivisibleError when <x, v> does not divide exactly, and
        InvalidRootError-style ValueError when v == 0.
        """
        d = self.dimension
        if len(v) != d:
            raise DimensionMismatchError("vector length does not match dimension")
        vv = [_as_coeff(c) for c in v]
        nonzero = [i for i, c in enumerate(vv) if c != 0]
        if not nonzero:
            raise ValueError("cannot divide by the zero linear form")
        if self.is_zero():
            return self
        p = nonzero[-1]
        vp = vv[p]
        if len(nonzero) == 1:
            # division by a multiple of a single variable
            out = {}
            for e, c in self.terms.items():
                if e[p] == 0:
                    raise NotDivisibleError("linear form does not divide the polynomial")
                out[e[:p] + (e[p] - 1,) + e[p + 1 :]] = c / vp
            return MultiPoly(d, out)
        rest = [(i, vv[i]) for i in nonzero[:-1]]
        rem: dict[Expo, Q] = dict(self.terms)
        quot: dict[Expo, Q] = {}
        top = max(e[p] for e in rem)
        for k in range(top, 0, -1):
            level = [(e, c) for e, c in rem.items() if e[p] == k]
            for e, c in level:
                qe = e[:p] + (k - 1,) + e[p + 1 :]
                qc = c / vp
                s = quot.get(qe, Q(0)) + qc
                if s:
                    quot[qe] = s
                else:
                    quot.pop(qe, None)
                del rem[e]
                for i, ci in rest:
                    re = qe[:i] + (qe[i] + 1,) + qe[i + 1 :]
                    s = rem.get(re, Q(0)) - qc * ci
                    if s:
                        rem[re] = s
                    else:
                        rem.pop(re, None)
        if rem:
            raise NotDivisibleError("linear form does not divide the polynomial")
        return MultiPoly(d, quot)

    def reduce_mod_sphere(self) -> "SphereFunction":
        """Canonical remainder modulo (x1^2+...+xd^2-1); see SphereFunction."""
        return SphereFunction.from_poly(self)

    # -- text form -----------------------------------------------------------

    def to_text(self) -> str:
        return format_poly(self)


class SphereFunction:
    """Restriction of a polynomial to the unit sphere, in canonical form.

    The representative is the unique remainder of the polynomial under
    division by ``x1^2+...+xd^2-1`` in graded-lexicographic order with the
    last variable greatest; equivalently its degree in the last variable is
    at most 1. Two restrictions are equal iff their representatives have
    identical term maps, so equality of functions on the sphere is decidable.
    """

    __slots__ = ("dimension", "rep")

    def __init__(self, rep: MultiPoly):
        if rep.dimension < 2:
            raise DimensionMismatchError("sphere functions need dimension >= 2")
        if any(e[-1] > 1 for e in rep.terms):
            raise ValueError("representative is not reduced; use from_poly")
        object.__setattr__(self, "dimension", rep.dimension)
        object.__setattr__(self, "rep", rep)

    def __setattr__(self, name, value):
        raise AttributeError("SphereFunction is immutable")

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "SphereFunction":
        d = p.dimension
        if d < 2:
            raise DimensionMismatchError("sphere functions need dimension >= 2")
        # x_d^(2m+r) == (1 - x_1^2 - ... - x_{d-1}^2)^m * x_d^r on the sphere
        one_minus_s = MultiPoly.one(d) - (
            MultiPoly.norm_squared(d)
            - MultiPoly(d, {tuple(2 if i == d - 1 else 0 for i in range(d)): Q(1)})
        )
        cache = [MultiPoly.one(d)]
        out = MultiPoly.zero(d)
        for e, c in p.terms.items():
            m, r = divmod(e[-1], 2)
            base = MultiPoly(d, {e[:-1] + (r,): c})
            if m == 0:
                out = out + base
                continue
            while len(cache) <= m:
                cache.append(cache[-1] * one_minus_s)
            out = out + base * cache[m]
        return cls(out)

    @classmethod
    def zero(cls, dimension: int) -> "SphereFunction":
        return cls(MultiPoly.zero(dimension))

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, SphereFunction):
            return NotImplemented
        return self.dimension == other.dimension and self.rep == other.rep

    __hash__ = None

    def __repr__(self) -> str:
        return f"SphereFunction({self.dimension}, {format_poly(self.rep)!r})"

    def _coerce(self, other) -> "SphereFunction":
        if isinstance(other, SphereFunction):
            if other.dimension != self.dimension:
                raise DimensionMismatchError("dimension mismatch")
            return other
        if isinstance(other, MultiPoly):
            return SphereFunction.from_poly(other)
        if isinstance(other, Rational):
            return SphereFunction(MultiPoly.constant(self.dimension, Q(other)))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return SphereFunction(self.rep + other.rep)

    __radd__ = __add__

    def __neg__(self):
        return SphereFunction(-self.rep)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return SphereFunction(self.rep - other.rep)

    def __mul__(self, other):
        if isinstance(other, Rational) and not isinstance(other, (MultiPoly, SphereFunction)):
            return SphereFunction(self.rep.scale(Q(other)))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return SphereFunction.from_poly(self.rep * other.rep)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "SphereFunction":
        return SphereFunction(self.rep.scale(c))

    def compose_linear(self, matrix) -> "SphereFunction":
        """f(xM) restricted back to the sphere; M should be orthogonal."""
        return SphereFunction.from_poly(self.rep.compose_linear(matrix))

    def evaluate(self, point):
        return self.rep.evaluate(point)


# -- canonical text form ----------------------------------------------------

_TERM_RE = re.compile(r"^\s*(?P<coeff>-?\d+(?:/\d+)?)\s*(?P<factors>(?:\*\s*.*)?)$")
_FACTOR_RE = re.compile(r"^x(?P<idx>\d+)(?:\^(?P<pow>\d+))?$")


def format_poly(p: MultiPoly) -> str:
    """Canonical text form: terms ``c * x1^a1 ... xd^ad`` joined by " + ".

    Coefficients print as ``p/q`` (bare integer when q == 1); zero-exponent
    factors are omitted; the zero polynomial prints as "0". Terms are ordered
    by (total degree, exponent tuple).
    """
    if p.is_zero():
        return "0"
    chunks = []
    for e, c in sorted(p.terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
        factors = " ".join(f"x{i + 1}^{k}" for i, k in enumerate(e) if k)
        chunks.append(f"{c} * {factors}" if factors else str(c))
    return " + ".join(chunks)


def parse_poly(text: str, dimension: int) -> MultiPoly:
    """Parse the canonical text form back into a polynomial."""
    text = text.strip()
    if text == "0" or not text:
        return MultiPoly.zero(dimension)
    terms: dict[Expo, Q] = {}
    for chunk in text.split("+"):
        m = _TERM_RE.match(chunk.strip())
        if not m:
            raise ValueError(f"cannot parse polynomial term {chunk!r}")
        coeff = Q(m.group("coeff"))
        expo = [0] * dimension
        factors = m.group("factors").lstrip("*").strip()
        if factors:
            for fac in factors.split():
                fm = _FACTOR_RE.match(fac)
                if not fm:
                    raise ValueError(f"cannot parse factor {fac!r}")
                idx = int(fm.group("idx")) - 1
                if not 0 <= idx < dimension:
                    raise DimensionMismatchError(f"variable x{idx + 1} out of range")
                expo[idx] += int(fm.group("pow") or 1)
        key = tuple(expo)
        terms[key] = terms.get(key, Q(0)) + coeff
    return MultiPoly(dimension, terms)
