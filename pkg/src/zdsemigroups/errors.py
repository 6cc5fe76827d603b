"""Exception types shared across the package."""


class UsageError(ValueError):
    """A caller violated a documented precondition or passed bad input."""


class BudgetError(UsageError):
    """An exhaustive search was requested beyond the desk-scale budget."""
