"""Exception hierarchy for kitebilliards."""
from typing import Any, Optional


class KiteBilliardsError(Exception):
    """Base class for every error raised by the package."""


class DomainError(KiteBilliardsError, ValueError):
    """A parameter or input lies outside the domain of an operation."""


class UndefinedOrbitError(KiteBilliardsError):
    """The outer billiards orbit hits the singular set."""

    def __init__(
        self,
        message: str,
        point: Any = None,
        vertex: Any = None,
        step: Optional[int] = None,
    ):
        super().__init__(message)
        self.point = point
        self.vertex = vertex
        self.step = step

    def at_step(self, step: int) -> "UndefinedOrbitError":
        """Return a copy of this error tagged with the iteration index."""
        return type(self)(f"{self} (step {step})", self.point, self.vertex, step)


class SingularStripError(UndefinedOrbitError):
    """A strip functional took an integer value."""


class InvalidDeltaError(KiteBilliardsError, ValueError):
    """A requested chain extension contradicts the parity/side pattern."""


class NoSuccessorError(KiteBilliardsError):
    """The digit sequence is last in the twirl order."""


class BudgetExceededError(KiteBilliardsError):
    """Direct iteration did not finish within its step budget."""

    def __init__(self, message: str, budget: int):
        super().__init__(message)
        self.budget = budget


class VerificationError(KiteBilliardsError):
    """A verification suite failed in strict mode."""

    def __init__(self, report: Any):
        super().__init__(f"verification '{report.name}' failed")
        self.report = report
