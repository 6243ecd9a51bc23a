"""Shared error types for work guards."""


class WorkGuardError(RuntimeError):
    """An operation refused to start because it would exceed its work guard."""


class BudgetExceededError(WorkGuardError):
    """An explicitly overridden scan ran out of its user-supplied time budget."""
