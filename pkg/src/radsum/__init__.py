"""Rademacher sums and their coefficient machinery.

Exact q-series oracles, PGL2(Q) group algebra for Hecke-type groups,
Kloosterman-sum/Bessel-series Fourier coefficients, direct and continued
Rademacher sums, and the moonshine-level identities built on them.
"""

__version__ = "0.1.0"

from .errors import (
    AlgebraError,
    InvalidInputError,
    PoleError,
    RegimeError,
    TruncationError,
    UnsupportedSpecError,
)

__all__ = [
    "__version__",
    "AlgebraError",
    "InvalidInputError",
    "PoleError",
    "RegimeError",
    "TruncationError",
    "UnsupportedSpecError",
]
