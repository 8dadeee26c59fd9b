"""Exception types shared across the package."""


class UsageError(ValueError):
    """Raised when an operation is called outside its domain."""


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive computation would exceed its search budget."""
