"""
Exception hierarchy for the lab.

Every error raised on purpose derives from LabError; the CLI turns those into
exit code 3 and prints the message. Subclasses also inherit the matching builtin
so plain ``except ValueError`` callers keep working.
"""

from typing import Optional


class LabError(Exception):
    """Base class for expected, user-facing failures."""

    exit_code = 3


class InvalidArgumentError(LabError, ValueError):
    """An argument is outside the accepted range."""


class OutOfRangeError(LabError, ValueError):
    """An index lies outside a table or function domain."""


class ArithmeticOverflowError(LabError, OverflowError):
    """An exact integer result does not fit the 64-bit range."""


class DomainError(LabError, ValueError):
    """A formula is evaluated where one of its hypotheses fails."""

    def __init__(self, message: str, hypothesis: Optional[str] = None):
        self.hypothesis = hypothesis
        if hypothesis:
            message = f"{message} (failing hypothesis: {hypothesis})"
        super().__init__(message)


class InfeasibleError(LabError):
    """A construction cannot satisfy its constraints."""


class BudgetExceededError(LabError):
    """A computation would exceed its configured work budget."""

    def __init__(self, message: str, estimate: Optional[float] = None, budget: Optional[float] = None):
        self.estimate = estimate
        self.budget = budget
        if estimate is not None and budget is not None:
            message = f"{message}: estimated {estimate:.3g} terms, budget {budget:.3g}"
        super().__init__(message)


class InvalidStateError(LabError, RuntimeError):
    """A report or object is not in a state the operation can use."""
