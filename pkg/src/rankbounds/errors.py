"""Shared error types mapped to CLI exit codes."""


class BudgetError(RuntimeError):
    """A configured resource guard was hit (matrix cells, pair budget)."""


class InvariantViolation(AssertionError):
    """An internal consistency check failed; results are not trustworthy."""
