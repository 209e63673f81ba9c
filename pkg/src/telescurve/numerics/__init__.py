"""Floating-point layer for the hyperelliptic curves ``(2, 3)`` and ``(2, 5)``."""

from .abel import AbelMap, abel_map
from .model import NumericCurve
from .periods import PeriodMatrices, compute_periods
from .sigma import SigmaEvaluator, find_characteristic
from .theta import CYTHON_AVAILABLE, theta
from .verify import NumericSetup, run_numeric_suite

__all__ = [
    "AbelMap",
    "CYTHON_AVAILABLE",
    "NumericCurve",
    "NumericSetup",
    "PeriodMatrices",
    "SigmaEvaluator",
    "abel_map",
    "compute_periods",
    "find_characteristic",
    "run_numeric_suite",
    "theta",
]
