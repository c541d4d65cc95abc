"""Executable paucity results for symmetric Diophantine systems."""

from .errors import (
    CapacityExceeded,
    DegenerateSystem,
    InsufficientData,
    InvalidMinpoly,
    Overflow,
    PaucityError,
    WorkBudgetExceeded,
    ZeroProduct,
)

__version__ = "0.1.0"
