"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of an operation."""


class AlignmentError(DomainError):
    """A step function's grid does not refine the grid it is matched against."""


class SolverError(RuntimeError):
    """An iterative solver failed to reach the requested tolerance."""


class VerificationFailure(AssertionError):
    """A relation the engine guarantees unconditionally was violated."""
