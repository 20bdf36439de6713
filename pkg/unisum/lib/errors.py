from typing import Any, Optional


class UnisumError(Exception):
    """Base class for every error raised by unisum."""


class DomainError(UnisumError, ValueError):
    pass


class ConstructionError(UnisumError):
    """Not a ValueError: pydantic validators let it through unwrapped."""


class SpecInvalidError(ConstructionError):
    def __init__(self, message: str, rule: str = "ordinal sum conditions"):
        super().__init__(message)
        self.rule = rule


class InvalidChoiceError(SpecInvalidError):
    def __init__(self, message: str, rule: str = "admissible g/h families"):
        super().__init__(message, rule=rule)


class InconclusiveClassificationError(UnisumError):
    pass


class _WitnessedError(UnisumError):
    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class NotInClassError(_WitnessedError):
    """The analysed operator is not a uninorm with continuous underlying operations."""


class InvariantViolationError(_WitnessedError):
    pass


class ResidualExceededError(_WitnessedError):
    def __init__(self, message: str, residual: float, witness: Optional[Any] = None):
        super().__init__(message, witness=witness)
        self.residual = residual


class SchemaError(UnisumError):
    pass
