"""Telescopic algebraic curves: semigroup data, defining equations, second-kind
differentials, expansions at infinity, Jacobi inversion formulas and a numeric
sigma-function layer for low-genus hyperelliptic members."""

from .curve import CurveFamily, LambdaSymbol, build_family
from .fs import inversion_formula, mu
from .secondkind import solve_symmetry
from .semigroup import SemigroupData, validate_telescopic

__all__ = [
    "CurveFamily",
    "LambdaSymbol",
    "SemigroupData",
    "build_family",
    "inversion_formula",
    "mu",
    "solve_symmetry",
    "validate_telescopic",
]

__version__ = "0.1.0"
