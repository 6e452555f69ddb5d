"""Exception hierarchy shared by every module of the package."""


class IncidenceLabError(Exception):
    """Base class for all errors raised by incidence_lab."""


class NonPrimeFieldError(IncidenceLabError, ValueError):
    pass


class FieldMismatchError(IncidenceLabError, ValueError):
    pass


class ZeroInverseError(IncidenceLabError, ZeroDivisionError):
    pass


class DegenerateObjectError(IncidenceLabError, ValueError):
    """A plane with zero normal, a line with zero direction, a zero polynomial."""


class EqualPointsError(IncidenceLabError, ValueError):
    pass


class EqualLinesError(IncidenceLabError, ValueError):
    pass


class EqualPlanesError(IncidenceLabError, ValueError):
    pass


class NoLambdaIntersectionError(IncidenceLabError, ValueError):
    pass


class NoPiIntersectionError(IncidenceLabError, ValueError):
    pass


class PointOnYZPlaneError(IncidenceLabError, ValueError):
    pass


class PlaneDegenerateForPsiError(IncidenceLabError, ValueError):
    pass


class GenericPositionFailure(IncidenceLabError):
    """No sampled affine map put the instance in general position."""


class FieldTooSmallForDegreeError(IncidenceLabError, ValueError):
    pass


class SizeOrderViolation(IncidenceLabError, ValueError):
    """Raised when an instance has more points than planes."""


class ParameterExceedsFieldError(IncidenceLabError, ValueError):
    pass


class ParseError(IncidenceLabError, ValueError):
    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class TransferIdentityViolation(IncidenceLabError, AssertionError):
    """Incidence and intersection counts disagreed after genericization."""
