"""Exception types shared across the package."""


class SPCircuitsError(Exception):
    """Base class for all package-specific errors."""


class AlternationError(SPCircuitsError, ValueError):
    """A circuit tree nests two nodes of the same connection type."""


class ArityError(SPCircuitsError, ValueError):
    """A non-unit circuit node has fewer than two children."""


class ParseError(SPCircuitsError, ValueError):
    """Malformed circuit text.

    Carries the byte offset of the first offending character.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class BudgetExceededError(SPCircuitsError):
    """A combinatorial-explosion guard was hit; raise the budget explicitly."""


class BracketingError(SPCircuitsError, ValueError):
    """Bisection endpoints do not straddle the target value."""


class TableUnderflowError(SPCircuitsError, LookupError):
    """A count table does not extend far enough for the requested index."""


class InternalConsistencyError(SPCircuitsError, RuntimeError):
    """An internal cross-check failed; indicates a bug, not bad input."""
