"""Exception hierarchy shared by every module of the package."""


class PaucityError(Exception):
    """Base class for all errors raised by :mod:`paucity`."""


class Overflow(PaucityError, OverflowError):
    """An exact integer result would not fit in the 127-bit capacity."""


class CapacityExceeded(PaucityError):
    """The worst-case intermediate for a (system, X) pair reaches 2**120."""


class WorkBudgetExceeded(PaucityError):
    """An enumeration would exceed its configured work budget."""


class DegenerateSystem(PaucityError):
    """Every row of a symmetric system vanishes."""


class InvalidMinpoly(PaucityError, ValueError):
    """A minimal polynomial is not a monic integer polynomial."""


class ZeroProduct(PaucityError, ValueError):
    """Ordered factorizations of zero were requested."""


class InsufficientData(PaucityError, ValueError):
    """Too few usable points for a growth-exponent fit."""
