class DomainError(ValueError):
    """An analysis was asked for a value outside the domain it is defined on."""


class ParameterError(DomainError):
    """A parameter is outside its admissible range."""


class StrategyError(DomainError):
    """The operation is not defined for the requested strategy or cost form."""


class ExportError(DomainError):
    """A result could not be written to its destination."""
