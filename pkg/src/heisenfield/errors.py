"""Exception hierarchy shared by every module of the package."""


class HeisenfieldError(Exception):
    """Base class for all errors raised by this package."""


class FieldError(HeisenfieldError):
    """Invalid field specification or illegal field operation."""


class ContextMismatch(HeisenfieldError):
    """Operands belong to different fields or different groups."""


class SizeBoundError(HeisenfieldError):
    """A finite object would exceed a configured size bound."""


class BudgetExhausted(HeisenfieldError):
    """A search over a countable structure ran out of its step budget.

    This is never a wrong answer: the search simply did not finish.
    """

    def __init__(self, what, budget):
        super().__init__(f"{what}: search budget of {budget} steps exhausted")
        self.what = what
        self.budget = budget


class AbelianGroupError(HeisenfieldError):
    """No non-commuting pair exists (the finite search was exhausted)."""


class CommutingPairError(HeisenfieldError):
    """A pair of parameters commutes, so it cannot define a field."""


class NotAGroupError(HeisenfieldError):
    """A supplied multiplication table fails the group axioms."""


class NotCentralError(HeisenfieldError):
    """An element expected to lie in the center does not."""


class InterpretationError(HeisenfieldError):
    """The interpretation is not well defined on the given host.

    ``violations`` is a list of dicts naming the failed condition and a
    concrete witness.
    """

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class HypothesisViolation(InterpretationError):
    """A hypothesis of the parameter-removal construction fails.

    ``condition`` names it (``"orbit"``, ``"bijection"``, ``"identity"``,
    ``"composition"``, ``"isomorphism"``).
    """

    def __init__(self, condition, violations=()):
        super().__init__(f"hypothesis violated: {condition}", violations)
        self.condition = condition


class FormulaError(HeisenfieldError):
    """Malformed formula, unknown symbol, or arity mismatch."""


class CopyIsoError(HeisenfieldError):
    """A claimed isomorphism between copies fails its homomorphism check."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)
