"""Exception types shared across the package.

The CLI maps ParseError/DomainError to exit code 2 and InternalError to
exit code 3; library callers can catch the base class.
"""


class SixJError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(SixJError, ValueError):
    """Malformed textual input (spin strings, CLI arguments)."""


class DomainError(SixJError, ValueError):
    """Input outside the domain of an operation (inadmissible spins, wrong regime)."""


class DegenerateError(DomainError):
    """Flat tetrahedron (zero volume) or degenerate triad where a formula is undefined."""


class MinkowskianError(DomainError):
    """Negative discriminant where a Euclidean-only quantity was requested."""


class InternalError(SixJError):
    """An internal invariant failed; indicates a bug, not bad input."""
