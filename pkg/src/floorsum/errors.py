"""Exception types shared across the package.

The CLI maps these onto distinct exit codes, so library code should raise
the most specific class that applies.
"""


class FloorsumError(Exception):
    """Base class for all package errors."""


class DomainError(FloorsumError, ValueError):
    """Input outside the mathematical domain of an operation."""


class BudgetExceededError(FloorsumError, RuntimeError):
    """A computation would exceed the configured term or memory budget."""


class InfeasibleBoxError(DomainError):
    """A box constraint with lower bound above its upper bound."""


class BracketTooWideError(FloorsumError, RuntimeError):
    """A constant bracket is too wide for the requested error resolution."""
