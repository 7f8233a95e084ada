"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes, so every failure a user can trigger
derives from :class:`RecipError`.
"""


class RecipError(Exception):
    """Base class for all package errors."""


class InvalidInput(RecipError, ValueError):
    """Malformed systems, documents, vectors of the wrong length, ..."""


class InvalidFactor(InvalidInput):
    """A denominator factor ``1 - m`` with ``m == 1``."""


class SingularOrder(InvalidInput):
    """A matrix order whose matrix is not invertible."""


class UnsupportedOrder(InvalidInput):
    """The requested operation needs an order kind that was not supplied."""


class NotPowerSeriesExpandable(InvalidInput):
    pass


class NotOriented(InvalidInput):
    pass


class NoMixedPair(InvalidInput):
    pass


class ZeroPivot(InvalidInput):
    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class RankDeficient(InvalidInput):
    pass


class NoPositiveSolution(InvalidInput):
    pass


class AllZeroRow(InvalidInput):
    pass


class TermBudgetExceeded(RecipError):
    """Elliott reduction produced more live terms than allowed."""

    def __init__(self, live, budget):
        super().__init__(f"term budget exceeded: {live} live terms > budget {budget}")
        self.live = live
        self.budget = budget


class IdentityViolation(RecipError):
    """An identity that must hold exactly did not; always an engine bug."""
