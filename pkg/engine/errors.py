"""
Exception hierarchy for the higher-order probability engine.

Every error carries the process exit code the command line uses for its
family and, when it comes from a model file, the field path that caused it.
"""
from typing import Optional

EXIT_OK = 0
EXIT_INTERNAL_ERROR = 1
EXIT_PARSE_ERROR = 2
EXIT_VALIDATION_ERROR = 3
EXIT_PRECONDITION_ERROR = 4
EXIT_EQUIVALENCE_FAILURE = 5


class HigherOrderError(Exception):
    """Base class for every error raised by the engine."""

    exit_code: int = EXIT_INTERNAL_ERROR

    def __init__(self, message: str, location: Optional[str] = None) -> None:
        super().__init__(message)
        self.message = message
        self.location = location

    def with_location(self, location: str) -> "HigherOrderError":
        """Attach a model-file location unless one is already set."""
        if self.location is None:
            self.location = location
        return self

    def __str__(self) -> str:
        if self.location:
            return f"{self.location}: {self.message}"
        return self.message


class ModelParseError(HigherOrderError):
    """The model file cannot be read or does not have the expected shape."""

    exit_code = EXIT_PARSE_ERROR


class ValidationError(HigherOrderError):
    """A value violates a structural invariant."""

    exit_code = EXIT_VALIDATION_ERROR


class NegativeWeight(ValidationError):
    pass


class NotNormalized(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class ActOutOfRange(ValidationError):
    pass


class MissingSection(ValidationError):
    pass


class UnknownName(ValidationError):
    """A referenced world, candidate, event or act label does not exist."""


class InvalidObservation(ValidationError):
    pass


class PreconditionError(HigherOrderError):
    """The inputs are valid but the requested operation is undefined on them."""

    exit_code = EXIT_PRECONDITION_ERROR


class ZeroProbabilityEvent(PreconditionError):
    pass


class InvalidShiftTarget(PreconditionError):
    pass


class EmptyConditioningEvent(PreconditionError):
    pass


class ImpossibleObservation(PreconditionError):
    pass


class EquivalenceFailure(HigherOrderError):
    """Two representations of the same belief disagreed, or an internal check failed."""

    exit_code = EXIT_EQUIVALENCE_FAILURE
