"""Exception hierarchy.

Errors fall in three families, which the CLI maps onto exit codes:

* :class:`PreconditionError` -- the caller asked for something outside the
  domain of an operation (exit code 2).
* :class:`NumericalError` -- the numerics could not reach the requested
  accuracy (exit code 3).
* :class:`VerificationError` -- a certificate or bound check failed
  (exit code 3).
"""

from __future__ import annotations

from typing import Any


class StieltjesKitError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(StieltjesKitError, ValueError):
    pass


class NumericalError(StieltjesKitError, ArithmeticError):
    pass


class VerificationError(StieltjesKitError):
    pass


class PreconditionViolated(PreconditionError):
    """A stated hypothesis failed; ``hypothesis`` names which one."""

    def __init__(self, hypothesis: str, message: str):
        super().__init__(f"{hypothesis}: {message}")
        self.hypothesis = hypothesis


class DomainError(PreconditionError):
    pass


class ResourceLimit(PreconditionError):
    pass


class UnsupportedCharacter(PreconditionError):
    pass


class PoleAtOne(PreconditionError):
    pass


class OutsideDisk(PreconditionError):
    pass


class QTooSmall(PreconditionError):
    pass


class MissingGamma(PreconditionError):
    pass


class TailDivergence(PreconditionError):
    pass


class NonConvergence(NumericalError):
    pass


class PrecisionTooLow(NumericalError):
    pass


class BoundViolated(VerificationError):
    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report


class RegressionDetected(VerificationError):
    pass


class NoCrossover(VerificationError):
    pass
