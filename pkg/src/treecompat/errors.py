"""Exception hierarchy shared by every stage of the pipeline."""


class TreeCompatError(Exception):
    """Base class for all errors raised by treecompat."""


class NewickError(TreeCompatError, ValueError):
    def __init__(self, message, position=None):
        self.message = message
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class GraphError(TreeCompatError, ValueError):
    """Unknown vertex or edge, or an otherwise malformed graph argument."""


class BudgetExceeded(TreeCompatError):
    """A search ran past its configured step budget.

    Never a verdict: callers must treat it as "unknown".
    """

    def __init__(self, what, budget):
        self.what = what
        self.budget = budget
        super().__init__(f"{what}: budget of {budget} exceeded")


class CapExceeded(TreeCompatError):
    """An input is larger than an enumeration cap allows."""

    def __init__(self, what, size, cap):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class SplitError(TreeCompatError, ValueError):
    pass


class InternalError(TreeCompatError):
    """A guaranteed postcondition failed; carries the offending witness."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)
