# src\hyperspline\exceptions.py

class HyperSplineError(Exception):
    """
    Root of every error raised by hyperspline.

    Carries a free-form `details` mapping (cell or edge indices, residuals,
    offending coordinates) that the CLI prints next to the message.
    """

    def __init__(self, message: str, details: dict = None):
        super().__init__(message)
        self.message = message
        self.details = dict(details) if details else {}

    def __str__(self):
        if not self.details:
            return self.message
        shown = ", ".join(f"{k}={v}" for k, v in self.details.items())
        return f"{self.message} ({shown})"

    def __repr__(self):
        return f"{type(self).__name__}({self.message!r}, details={self.details!r})"


class FieldArithmeticError(HyperSplineError, ZeroDivisionError):
    """
    Raised when dividing by zero in the number field Q(beta).
    """


class ModelMismatchError(HyperSplineError):
    """
    Raised when a disk point carries the wrong model tag for an operation.
    """


class DegenerateGeometryError(HyperSplineError):
    """
    Raised for coincident points, poles, degenerate chords and zero projective denominators.
    """


class CanonicalizationError(HyperSplineError):
    """
    Raised when reduction into the fundamental octagon fails to terminate.
    """


class PartitionValidationError(HyperSplineError):
    """
    Raised when a partition document or a partition query violates the partition invariants.
    """


class SplineSpaceError(HyperSplineError):
    """
    Raised for malformed spline-space inputs (pairs, line configurations, ranges).
    """


class NumericalAgreementError(HyperSplineError):
    """
    Raised when two independent numerical oracles disagree or residuals blow up.
    """
