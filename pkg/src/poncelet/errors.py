"""Exception hierarchy shared by all modules."""


class PonceletError(ValueError):
    """Base class for every error raised by this package."""


class InvalidConic(PonceletError):
    pass


class DegenerateConic(PonceletError):
    pass


class PolarUndefined(PonceletError):
    pass


class LineOnConic(PonceletError):
    pass


class EmptyRealLocus(PonceletError):
    pass


class NotTwoLines(PonceletError):
    pass


class NotCollinear(PonceletError):
    pass


class Coincident(PonceletError):
    pass


class SingularTransform(PonceletError):
    pass


class IdenticalConics(PonceletError):
    pass


class WrongMultiplicityPattern(PonceletError):
    pass


class NoDoubleContact(PonceletError):
    pass


class ContactOrderTooHigh(PonceletError):
    pass


class AlphaOutOfRange(PonceletError):
    pass


class LineMeetsConic(PonceletError):
    pass


class VertexNotInside(PonceletError):
    pass


class DegenerateConfiguration(PonceletError):
    pass


class UnsupportedConfiguration(PonceletError):
    pass


class WrongType(PonceletError):
    pass


class ChainError(PonceletError):
    """Raised by a single Poncelet step when the construction cannot continue."""


class NoRealTangent(ChainError):
    pass


class TangentOnly(ChainError):
    pass


class NoSecondIntersection(ChainError):
    pass


class BadStart(ChainError):
    pass


class NoneExists(PonceletError):
    pass


class DegreeOutOfRange(PonceletError):
    pass


class WitnessNotFound(PonceletError):
    pass


class ParseError(PonceletError):
    pass


class ValidationError(PonceletError):
    def __init__(self, field: str, reason: str):
        super().__init__(f"{field}: {reason}")
        self.field = field
        self.reason = reason


class EmptyViewbox(PonceletError):
    pass


class AlphaDegenerate(PonceletError):
    pass


class NegativeAlpha(PonceletError):
    pass
