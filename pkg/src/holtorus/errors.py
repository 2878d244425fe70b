"""Exception hierarchy shared by all holtorus modules.

Two families matter for the CLI exit codes: precondition violations
(exit 1) and exhausted search/iteration budgets (exit 2).
"""


class HoltorusError(Exception):
    """Base class for all package errors."""


class PreconditionError(HoltorusError):
    """An operation was called outside its documented domain."""


class BudgetError(HoltorusError):
    """A bounded search or iteration ran out of budget."""


class NotElliptic(PreconditionError):
    pass


class CommutingPair(PreconditionError):
    pass


class NonRegularPoint(PreconditionError):
    pass


class PreconditionKappa(PreconditionError):
    pass


class ReducibleTriple(PreconditionError):
    pass


class NotRealizable(PreconditionError):
    pass


class TorsionRotation(PreconditionError):
    pass


class ReferencePathAmbiguous(PreconditionError):
    pass


class InsufficientSamples(PreconditionError):
    pass


class IterationBudgetExceeded(BudgetError):
    """Carries the best triple and word found before the budget ran out."""

    def __init__(self, message, word=None, best=None):
        super().__init__(message)
        self.word = word if word is not None else []
        self.best = best


class SearchBudgetExceeded(BudgetError):
    pass


class RejectionBudgetExceeded(BudgetError):
    pass


class LevelUnreachable(BudgetError):
    pass


class UnwrapResolutionExceeded(BudgetError):
    pass


class StepSizeUnderflow(BudgetError):
    pass
