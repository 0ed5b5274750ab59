"""Shared exception types."""


class GroupMismatchError(ValueError):
    """An element or subset does not belong to the group it was used with."""


class UnsupportedGroupError(ValueError):
    """The operation is not defined for this group variant."""


class BudgetExceededError(RuntimeError):
    """An enumeration or state-space budget was exceeded.

    Raised instead of silently starting an astronomically large loop; the
    message names the budget and the requested size.
    """

    def __init__(self, what, requested, budget):
        super().__init__(f"{what}: requested {requested} exceeds budget {budget}")
        self.what = what
        self.requested = requested
        self.budget = budget
