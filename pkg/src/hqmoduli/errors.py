"""Exception types shared across the package."""


class HQError(Exception):
    """Base class for all package errors."""


class UsageError(HQError):
    """Malformed request: bad shapes, bad permutations, model mismatch."""


class DomainError(HQError):
    """Input outside the mathematical domain of the operation."""


class DegenerateInputError(DomainError):
    """Input is degenerate for this operation (e.g. linearly dependent
    imaginary parts, proportional vectors); callers may fall back to a
    simpler primitive."""


class RealizationError(HQError):
    """A Gram matrix cannot be realized in the target space.

    `violated` names the inertia condition that failed.
    """

    def __init__(self, violated: str, message: str | None = None):
        self.violated = violated
        super().__init__(message or f"inertia condition violated: {violated}")


class InconsistencyError(HQError):
    """Internal numerical consistency check failed; usually a sign that a
    tolerance is mis-tuned for the data at hand."""
