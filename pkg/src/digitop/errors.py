"""Exception hierarchy shared by the engine and the CLI."""


class DigitopError(Exception):
    """Base class for all engine errors."""


class GraphError(DigitopError, ValueError):
    """Malformed graph data or an operation on unknown vertices."""


class CapExceeded(DigitopError):
    """A size cap (canonicalization, window points) was exceeded."""


class BudgetExceeded(DigitopError):
    """A configured work budget ran out before the computation finished."""


class StepError(DigitopError, ValueError):
    """A transformation step is malformed or violates simplicity."""


class PreconditionError(DigitopError, ValueError):
    """An operation was called outside its documented preconditions."""


class InconsistencyError(DigitopError, RuntimeError):
    """The engine contradicted one of its own guarantees.

    Raised instead of returning a quiet wrong answer, e.g. when a greedy
    reduction gets stuck although its preconditions were verified.
    """
