"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class FrequencyMismatchError(DomainError):
    """The two atoms do not share a single transition frequency."""


class PoleError(DomainError):
    """Evaluation requested exactly at (or too close to) a resonance pole."""


class AccuracyError(RuntimeError):
    """A quadrature failed to reach its target accuracy.

    Carries the partial result so callers can decide whether to use it.
    """

    def __init__(self, message, value=None, abs_err_est=None):
        super().__init__(message)
        self.value = value
        self.abs_err_est = abs_err_est
