"""Exception hierarchy for qssgeo.

Validation errors carry the measured violation so callers can report how far
an input was from satisfying the contract.
"""

from __future__ import annotations


class QssError(Exception):
    """Base class for all qssgeo errors."""


class NotHermitianError(QssError):
    def __init__(self, deviation: float):
        super().__init__(f"matrix is not Hermitian: max |A - A^H| = {deviation:.6e}")
        self.deviation = deviation


class NotUnitTraceError(QssError):
    def __init__(self, deviation: float):
        super().__init__(f"matrix does not have unit trace: |Tr - 1| = {deviation:.6e}")
        self.deviation = deviation


class NotTracelessError(QssError):
    def __init__(self, deviation: float):
        super().__init__(f"matrix is not traceless: |Tr| = {deviation:.6e}")
        self.deviation = deviation


class NotPositiveDefiniteError(QssError):
    def __init__(self, min_eigenvalue: float):
        super().__init__(
            f"matrix is not positive definite: smallest eigenvalue = {min_eigenvalue:.6e}"
        )
        self.min_eigenvalue = min_eigenvalue


class NotInSldSpaceError(QssError):
    def __init__(self, deviation: float):
        super().__init__(
            f"matrix violates Tr(rho X + X rho) = 0: deviation = {deviation:.6e}"
        )
        self.deviation = deviation


class DimensionTooSmallError(QssError):
    def __init__(self, n: int):
        super().__init__(f"dimension must be at least 2, got {n}")
        self.n = n


class DimensionMismatchError(QssError):
    pass


class BaseMismatchError(QssError):
    pass


class DecompositionFailedError(QssError):
    pass


class NegativeTimeDisabledError(QssError):
    def __init__(self, t: float):
        super().__init__(
            f"negative time t = {t} requires allow_negative=True; the curve domain is t >= 0"
        )
        self.t = t


class InvalidStepError(QssError):
    pass


class StepTooLargeError(QssError):
    def __init__(self, time: float, min_eigenvalue: float):
        super().__init__(
            f"state lost positive-definiteness at t = {time}: smallest eigenvalue = "
            f"{min_eigenvalue:.6e}; reduce the step size"
        )
        self.time = time
        self.min_eigenvalue = min_eigenvalue


class ZeroComponentError(QssError):
    def __init__(self, index: int, value: float):
        super().__init__(
            f"component {index} is numerically zero ({value:.6e}); the vector lies "
            "outside every orthant chart"
        )
        self.index = index
        self.value = value


class SearchBudgetExhaustedError(QssError):
    """Raised when a probe's evaluation budget runs out; carries the best result so far."""

    def __init__(self, best):
        super().__init__("search budget exhausted before all restarts completed")
        self.best = best


class ParseError(QssError):
    pass


class UsageError(QssError):
    pass
