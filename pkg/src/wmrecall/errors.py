"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class ContractError(ValueError):
    """Structural precondition violated (dimension mismatch, bad config)."""


class BlowUpError(RuntimeError):
    """Integration produced a non-finite or runaway state.

    Attributes:
        time: simulation time at which the failure was detected (None if
            the failing step is unknown to the caller).
    """

    def __init__(self, message: str, time: float | None = None):
        super().__init__(message)
        self.time = time


class ClassificationError(RuntimeError):
    """Regime evidence is internally inconsistent; carries the evidence."""

    def __init__(self, message: str, evidence=None):
        super().__init__(message)
        self.evidence = evidence
