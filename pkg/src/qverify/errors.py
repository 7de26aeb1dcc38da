"""Exception types raised across the package."""


class QVerifyError(Exception):
    """Base class for every error raised by qverify."""


class ZeroAtNegativeExponent(QVerifyError, ZeroDivisionError):
    """A Laurent polynomial with a pole at 0 was evaluated at 0."""


class DiscriminantMismatch(QVerifyError, ValueError):
    pass


class DivisionByZero(QVerifyError, ZeroDivisionError):
    pass


class NonSquare(QVerifyError, ValueError):
    pass


class BoundExceeded(QVerifyError, ValueError):
    """Requested coefficient lies beyond the truncation bound."""


class PoleAtMinusOne(QVerifyError, ZeroDivisionError):
    """A weight x_k = -1 makes a (1 + x_k) denominator vanish."""


class DegenerateParameters(QVerifyError, ValueError):
    pass


class RejectsMMod3Zero(QVerifyError, ValueError):
    pass


class ParameterCongruenceViolation(QVerifyError, ValueError):
    pass


class NonExactDivision(QVerifyError, ArithmeticError):
    pass


class GridTooSmall(QVerifyError, ValueError):
    pass


class NotInT(QVerifyError, AssertionError):
    pass


class NotInS(QVerifyError, ValueError):
    pass


class ConfigError(QVerifyError, ValueError):
    """Invalid suite configuration; ``location`` names the offending key."""

    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)
