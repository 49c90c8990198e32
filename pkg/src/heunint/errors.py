"""Exception hierarchy shared by every module."""


class HeunError(Exception):
    """Base class for library errors."""


class DomainError(HeunError, ValueError):
    """Argument outside the region where an operation is defined."""


class ResonanceError(DomainError):
    """A recurrence factor vanished; the series normalization is undefined."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ConvergenceError(HeunError, ArithmeticError):
    """Iteration budget exhausted. ``best`` holds the last estimate, if any."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class ConstraintError(HeunError, ValueError):
    """A parameter tie required by a closed-form formula does not hold."""

    def __init__(self, message, case=None):
        super().__init__(message)
        self.case = case


class InvalidInstance(HeunError, ValueError):
    """An identity was instantiated with parameters that fail its validity test."""

    def __init__(self, report):
        detail = "; ".join(f"{name}: {why}" for name, why in report.violations)
        super().__init__(detail or "invalid instance")
        self.report = report
