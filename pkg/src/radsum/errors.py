"""Shared exception types.

The CLI maps InvalidInputError to exit code 2 and UnsupportedSpecError to
exit code 3; everything else is an ordinary failure.
"""


class InvalidInputError(ValueError):
    """Malformed argument: zero matrix, word outside the group, bad cusp."""


class UnsupportedSpecError(ValueError):
    """Group family / cusp pair / size outside the implemented range."""


class RegimeError(ValueError):
    """Query outside the convergent regime of the requested series."""


class PoleError(ArithmeticError):
    """Evaluation hit a pole (Gamma factor, Hurwitz zeta at s=1, ...)."""


class AlgebraError(ArithmeticError):
    """Formal-series operation undefined (non-invertible leading term)."""


class TruncationError(ValueError):
    """A coefficient beyond the tracked truncation order was requested."""
