"""Errors and enumeration budgets shared across the package."""

import os


class FracvarError(Exception):
    """Base class for errors raised by fracvar."""


class RegimeError(FracvarError, ValueError):
    """Parameters fall outside the regime an operation is defined for."""


class ModeMismatchError(FracvarError, ValueError):
    """Requested method or law does not fit the base function."""


class BudgetExceededError(FracvarError, RuntimeError):
    """An enumeration would exceed its size budget."""

    def __init__(self, operation, required, budget):
        self.operation = operation
        self.required = required
        self.budget = budget
        super().__init__(
            f"{operation}: requires {required} items, budget is {budget}"
            " (set FRACVAR_BUDGET to override)"
        )


DISTRIBUTION_BUDGET = 10**7
VARIATION_BUDGET = 3 * 10**7


def budget(default):
    """Return the enumeration budget, honouring ``FRACVAR_BUDGET``."""
    raw = os.environ.get("FRACVAR_BUDGET")
    if raw:
        return int(float(raw))
    return default


def check_budget(operation, required, default):
    limit = budget(default)
    if required > limit:
        raise BudgetExceededError(operation, required, limit)
