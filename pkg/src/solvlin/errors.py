"""Exception types shared across the package."""


class SolvlinError(Exception):
    """Base class."""


class DomainError(SolvlinError, ValueError):
    """A mathematically invalid request (inverting zero, singular matrix, ...)."""


class UsageError(SolvlinError, ValueError):
    """Inputs that violate a documented precondition."""


class ResourceError(SolvlinError, RuntimeError):
    """A size cap was exceeded."""

    def __init__(self, message: str, partial: int | None = None):
        super().__init__(message)
        self.partial = partial


class StructuralError(SolvlinError, AssertionError):
    """A structural clause failed; this would contradict a theorem."""

    def __init__(self, clause: str, message: str):
        super().__init__(f"{clause}: {message}")
        self.clause = clause


class Alarm(SolvlinError, AssertionError):
    """A verifier could not confirm a theorem's conclusion."""
