"""Package-wide exception types."""

from __future__ import annotations

__all__ = ["BudgetExceededError", "DegenerateBracketError"]


class BudgetExceededError(RuntimeError):
    """An enumeration would grow past its element budget.

    Raised instead of silently truncating; the partial count seen so far is
    kept so callers can report how big the set was going to be.
    """

    def __init__(self, budget: int, discovered: int, what: str = "enumeration"):
        self.budget = budget
        self.discovered = discovered
        self.what = what
        super().__init__(
            "%s exceeded budget of %d elements (at least %d found); "
            "raise the budget to continue" % (what, budget, discovered)
        )


class DegenerateBracketError(ValueError):
    """Surface invariant bracket 1 - sum(1/ord) is not positive."""
