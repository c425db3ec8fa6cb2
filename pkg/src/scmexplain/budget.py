"""Enumeration budget: a cap on the number of assignments one operation evaluates."""

from __future__ import annotations

from .errors import BudgetExceeded

DEFAULT_BUDGET = 10**7


class Budget:
    """Counts assignments evaluated by a top-level operation.

    Charges are made up front, before an enumeration starts, so an operation
    that would exceed the cap fails without doing partial work.
    """

    __slots__ = ("limit", "used")

    def __init__(self, limit: int = DEFAULT_BUDGET):
        if limit < 0:
            raise ValueError("budget limit must be non-negative")
        self.limit = limit
        self.used = 0

    def charge(self, n: int) -> None:
        if self.used + n > self.limit:
            raise BudgetExceeded(self.limit, self.used + n)
        self.used += n

    @property
    def remaining(self) -> int:
        return self.limit - self.used

    def __repr__(self) -> str:
        return f"Budget(limit={self.limit}, used={self.used})"


def ensure_budget(budget: Budget | int | None) -> Budget:
    if budget is None:
        return Budget()
    if isinstance(budget, Budget):
        return budget
    return Budget(int(budget))
