__all__ = [
    "EXIT_DOMAIN_FAILURE",
    "EXIT_INPUT_ERROR",
    "EXIT_CAP_EXCEEDED",
    "InputError",
    "BraidParseError",
    "DomainError",
    "IllegalMoveError",
    "DegenerateCurveError",
    "CurveConditionError",
    "NoSeparatingPointError",
    "StrandOrderError",
    "WindingError",
    "IndeterminateCrossingError",
    "NotAFrontError",
    "ToleranceError",
    "IterationCapError",
    "exit_code_for",
]

EXIT_DOMAIN_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_CAP_EXCEEDED = 3


class InputError(ValueError):
    """Malformed or out-of-range input."""


class BraidParseError(InputError):
    """A text document could not be parsed.

    Parameters
    ----------
    message
        What went wrong.
    line
        1-based line number of the offending token.
    column
        1-based column number of the offending token.
    """

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DomainError(ValueError):
    """Well-formed input on which the operation is undefined."""


class IllegalMoveError(DomainError):
    """A holonomic move's side condition does not hold."""


class DegenerateCurveError(DomainError):
    """The function has a non-simple zero or vanishes identically."""


class CurveConditionError(DomainError):
    """A genericity condition needed by the operation fails."""


class NoSeparatingPointError(DomainError):
    """The axis crossings of the two f'' signs interleave."""


class StrandOrderError(DomainError):
    """Strand radii cannot be ordered at a crossing."""


class WindingError(DomainError):
    """The projection does not wind anticlockwise about the braid axis
    point at every sample."""


class IndeterminateCrossingError(DomainError):
    """Front branches are too close to tangent to sign a crossing."""


class NotAFrontError(DomainError):
    """k=0 gives the holonomic curve itself, which has no front."""


class ToleranceError(RuntimeError):
    """Two independent numerical computations disagree."""


class IterationCapError(RuntimeError):
    """A search exceeded its configured cap."""


def exit_code_for(error: BaseException) -> int:
    """Get the command-line exit code for an exception.

    Raises
    ------
    TypeError
        If ``error`` is not one of the handled exception families.
    """
    if isinstance(error, IterationCapError):
        return EXIT_CAP_EXCEEDED
    if isinstance(error, (DomainError, ToleranceError)):
        return EXIT_DOMAIN_FAILURE
    if isinstance(error, (InputError, ValueError)):
        return EXIT_INPUT_ERROR
    raise TypeError(f"No exit code for {type(error).__name__}")
