"""Exception types shared by every package."""


class DomainError(ValueError):
    """A precondition on the inputs was violated."""


class GuardExceeded(DomainError):
    """A size or cost guard was exceeded."""

    def __init__(self, guard: str, limit, requested):
        self.guard = guard
        self.limit = limit
        self.requested = requested
        super().__init__(f"{guard} exceeded: requested {requested}, limit {limit}")


class FormatError(DomainError):
    """A truth-table or polynomial file could not be parsed."""


class EstimationError(RuntimeError):
    """A Monte-Carlo self-check failed."""
