"""Exception types raised across faberlab."""


class FaberlabError(Exception):
    """Base class for every error raised by this package."""


class PrecisionExceeded(FaberlabError):
    """A coefficient beyond the known truncation was requested."""


class InsufficientPrecision(FaberlabError):
    pass


class NonUnitLeadingCoefficient(FaberlabError):
    pass


class InvalidWeight(FaberlabError, ValueError):
    pass


class UnsupportedWeight(FaberlabError, ValueError):
    pass


class IndexOutOfRange(FaberlabError, ValueError):
    pass


class OutOfTheoremRange(FaberlabError, ValueError):
    """Requested power-sum index lies outside ``n <= ell - m``."""


class NonIntegerResult(FaberlabError, ArithmeticError):
    pass


class InconsistentInstances(FaberlabError, ArithmeticError):
    pass


class CapExceeded(FaberlabError, ValueError):
    pass


class ZeroPolynomial(FaberlabError, ValueError):
    pass


class NotAllOnArc(FaberlabError):
    pass


class EmptySample(FaberlabError, ValueError):
    pass


class OutOfRegime(FaberlabError, ValueError):
    pass


class RangeError(FaberlabError, ValueError):
    pass


class TailBoundFailure(FaberlabError, ArithmeticError):
    pass


class QuadratureFailure(FaberlabError, ArithmeticError):
    pass
