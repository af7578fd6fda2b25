"""Exception types shared across the package."""


class DunklError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(DunklError):
    """Operands live in different ambient dimensions."""


class InvalidRootError(DunklError):
    """A root vector or root system violates its invariants."""


class GroupTooLargeError(DunklError):
    """Reflection group closure exceeded the configured size cap."""


class NotDivisibleError(DunklError):
    """Exact division by a linear form left a nonzero remainder."""


class InternalInconsistencyError(DunklError):
    """A condition that is impossible by construction was observed.

    Raised loudly instead of returning wrong values; seeing this means a bug.
    """


class UnsupportedTierError(DunklError):
    """The requested exact integral has no closed form here.

    The Monte Carlo oracle (``quadrature.mc_integrate``) still applies.
    """


class DegenerateInputError(DunklError):
    """Input is constant or otherwise degenerate for the requested operation."""


class AdmissibilityError(DunklError):
    """Function does not satisfy the zero-mean / unit-norm / invariance hypotheses."""
