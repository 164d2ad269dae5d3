"""Exception types shared across the package."""


class StiefelError(Exception):
    """Base class for errors raised by this package."""


class ParameterError(StiefelError, ValueError):
    """Invalid ring parameters, indices, or malformed input."""


class HypothesisError(StiefelError):
    """A theorem's hypothesis does not hold for the requested parameters."""


class BudgetExceeded(StiefelError):
    """The enumeration state space is larger than the allowed budget."""

    def __init__(self, state_space: int, budget: int):
        self.state_space = state_space
        self.budget = budget
        super().__init__(
            f"state space of {state_space} assignments exceeds budget {budget}"
        )
