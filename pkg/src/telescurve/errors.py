"""Exception hierarchy shared by all modules."""


class TelescurveError(Exception):
    """Base class for every error raised by the package."""


class InvalidSequence(TelescurveError, ValueError):
    """The generating sequence does not define a telescopic curve."""


class TooSmall(InvalidSequence):
    pass


class NotCoprime(InvalidSequence):
    pass


class NotTelescopic(InvalidSequence):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"telescopic condition fails at i={index}")


class OutOfRange(TelescurveError, ValueError):
    pass


class OutOfRangeK(OutOfRange):
    def __init__(self, k, lo, hi):
        self.k, self.lo, self.hi = k, lo, hi
        super().__init__(f"k={k} outside admissible range [{lo}, {hi}]")


class InexactDivision(TelescurveError, ArithmeticError):
    pass


class MixedUniverse(TelescurveError, ValueError):
    pass


class NonSquare(TelescurveError, ValueError):
    pass


class InadmissibleLambda(TelescurveError, ValueError):
    pass


class NoSolution(TelescurveError, ArithmeticError):
    pass


class InsufficientOrder(TelescurveError, ValueError):
    pass


class BranchObstruction(TelescurveError, ArithmeticError):
    pass


class DegenerateDivisor(TelescurveError, ZeroDivisionError):
    pass


class UnsupportedFamily(TelescurveError, NotImplementedError):
    pass


class IntegrationFailure(TelescurveError, RuntimeError):
    pass


class NoCharacteristicFound(TelescurveError, RuntimeError):
    pass


class AmbiguousCharacteristic(TelescurveError, RuntimeError):
    pass


class TruncationOverflow(TelescurveError, RuntimeError):
    pass


class OnThetaDivisor(TelescurveError, ZeroDivisionError):
    pass


class PathThroughBranchPoint(TelescurveError, RuntimeError):
    pass


class SeriesRadiusFailure(TelescurveError, RuntimeError):
    pass


class DegenerateConfiguration(TelescurveError, ValueError):
    pass


class MalformedSpec(TelescurveError, ValueError):
    """Curve-spec or period-cache JSON that does not parse."""
