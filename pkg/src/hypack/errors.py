"""Exception types shared across the package."""


class DomainError(ValueError):
    """A parameter lies outside the domain where a formula is defined."""


class GeometryError(ValueError):
    """A geometric precondition does not hold (wrong point class, bad form, ...)."""


class DecompositionError(RuntimeError):
    """The cutting procedure hit a degenerate or non-terminating configuration.

    ``trace`` holds the events recorded before the failure.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = list(trace or [])
