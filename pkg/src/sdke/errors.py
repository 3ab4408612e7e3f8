class SdkeError(Exception):
    pass


class GraphParseError(SdkeError, ValueError):
    pass


class BudgetExceeded(SdkeError):
    """An exponential enumeration hit its configured limit."""

    def __init__(self, what: str, budget: int):
        super().__init__(f"{what}: budget of {budget} exceeded")
        self.what = what
        self.budget = budget


class PreconditionError(SdkeError, ValueError):
    pass
