# vim: expandtab:ts=4:sw=4
"""Exceptions raised by the qmknot package."""


class QmknotError(Exception):
    """Base class of every error raised by this package."""


class ArithmeticFailure(QmknotError):
    pass


class DivisionNotExact(ArithmeticFailure):
    pass


class DivideByZero(ArithmeticFailure):
    pass


class ParseError(QmknotError, ValueError):
    """Malformed text input.

    Parameters
    ----------
    message : str
        Human readable description.
    position : Optional[int]
        Zero-based character (or token) offset where parsing failed.

    """

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class SpecError(QmknotError):
    pass


class UnsupportedRank(SpecError):
    pass


class InvalidLabel(SpecError):
    pass


class AssemblyMismatch(QmknotError):
    """Two independent formulas for the same braiding entry disagree."""


class InverseCheckFailed(QmknotError):
    pass


class GeneratorOutOfRange(QmknotError):
    pass


class InvalidTape(QmknotError):
    pass


class MalformedPD(QmknotError):
    pass


class InconsistentEdges(MalformedPD):
    pass


class RecursionLimit(QmknotError):
    pass


class StepUnstable(QmknotError):
    pass
