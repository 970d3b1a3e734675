"""Exception types shared across the generator and the analysis toolkit."""


class AbcdError(Exception):
    """Base class for all errors raised by this package."""


class RangeError(AbcdError):
    """A model parameter is outside its valid range."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class ParseError(AbcdError):
    """A config or data file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DomainError(AbcdError):
    """An argument is outside the mathematical domain of an operation."""


class InfeasibleError(AbcdError):
    """No valid continuation exists for the requested construction."""


class ParityError(AbcdError):
    """A weight sequence has odd total; no perfect matching exists."""


class NotSimpleError(AbcdError):
    """Edge switching exhausted its budget with conflicts remaining."""


class NotConnectedError(AbcdError):
    """The node set passed in does not induce a connected subgraph."""


class EmptyGraphError(AbcdError):
    """The operation is undefined on a graph with no edges."""


class PreconditionError(AbcdError):
    """A required input (produced by an earlier pipeline stage) is missing."""
