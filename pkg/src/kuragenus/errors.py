"""Exception types shared across the toolkit."""


class BudgetExceeded(RuntimeError):
    """An exhaustive search would exceed its configured size or budget cap."""


class InvariantViolation(AssertionError):
    """A certificate or postcondition failed independent re-verification."""
