"""Exception hierarchy shared by every module of the package."""


class KNetError(Exception):
    """Base class for all errors raised by knets."""


# scalar field
class OutOfRange(KNetError, ValueError):
    pass


class SquareDiscriminant(KNetError, ValueError):
    pass


class ZeroDiscriminant(KNetError, ValueError):
    pass


class InvalidField(KNetError, ValueError):
    pass


class DivisionByZero(KNetError, ZeroDivisionError):
    pass


class FieldMismatch(KNetError, TypeError):
    pass


# projective geometry
class CoincidentLines(KNetError, ValueError):
    pass


class CoincidentPoints(KNetError, ValueError):
    pass


class SingularTransform(KNetError, ValueError):
    pass


class ZeroVector(KNetError, ValueError):
    pass


# latin squares
class OrderMismatch(KNetError, ValueError):
    pass


class OrderTooLarge(KNetError, ValueError):
    pass


class NotLatin(KNetError, ValueError):
    pass


# nets
class NotANet(KNetError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class BadBasePoints(KNetError, ValueError):
    pass


class DegenerateFiber(KNetError, ValueError):
    pass


class SharedLine(KNetError, ValueError):
    pass


class DegenerateData(KNetError):
    pass


class TooManyOnALine(KNetError):
    def __init__(self, message, line=None, count=None):
        super().__init__(message)
        self.line = line
        self.count = count


class NotOrthogonal(KNetError, ValueError):
    pass


# pencils
class DegreeMismatch(KNetError, ValueError):
    pass


class NotInPencil(KNetError):
    pass


class RankViolation(KNetError):
    def __init__(self, message, rank=None, matrix=None):
        super().__init__(message)
        self.rank = rank
        self.matrix = matrix


# families
class DegenerateParameters(KNetError, ValueError):
    pass


class AxisFailure(KNetError):
    def __init__(self, message, points=None, determinant=None):
        super().__init__(message)
        self.points = points
        self.determinant = determinant


class SearchExhausted(KNetError):
    pass


class TranscriptionMismatch(KNetError):
    pass


# cli-level
class NonRealConfiguration(KNetError):
    pass


class NotComplete(KNetError, ValueError):
    pass


class FormatError(KNetError, ValueError):
    pass


class CompletionFailed(KNetError):
    """A fiber of a Latin square is not collinear; carries the certificate."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate
