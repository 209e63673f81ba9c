"""Numeric hyperelliptic models ``x2^2 = f(x1)`` with real branch points."""

from __future__ import annotations

from functools import cached_property

import numpy as np

from ..curve import LambdaSymbol, admissible_lambdas, build_family
from ..errors import UnsupportedFamily
from ..semigroup import validate_telescopic


def _as_complex(v) -> complex:
    if isinstance(v, (list, tuple)):
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, str):
        from fractions import Fraction
        return complex(Fraction(v))
    return complex(v)


class NumericCurve:
    """A supported curve with complex lambda values.

    Only sequences ``(2, 2g+1)`` with ``g <= 2`` and lambdas free of ``x2``
    are accepted, and the branch points must be real and distinct.
    """

    def __init__(self, seq, lambdas=None, tol: float = 1e-9):
        sg = validate_telescopic(seq)
        if sg.m != 2 or sg.a[0] != 2 or sg.genus > 2:
            raise UnsupportedFamily(f"numeric layer supports (2,3) and (2,5) only, got {sg.a}")
        self.sg = sg
        self.tol = tol
        allowed = set(admissible_lambdas(sg))
        self.lambdas = {}
        for key, val in (lambdas or {}).items():
            sym = LambdaSymbol.parse(key) if isinstance(key, str) else key
            if sym not in allowed:
                raise UnsupportedFamily(f"{sym.key()} is not an admissible coefficient")
            val = _as_complex(val)
            if val == 0:
                continue
            if sym.j[1] != 0:
                raise UnsupportedFamily("coefficients of x2-terms are not supported numerically")
            self.lambdas[sym] = val
        s = sg.a[1]
        coeffs = np.zeros(s + 1, dtype=complex)  # ascending powers
        coeffs[s] = 1
        for sym, val in self.lambdas.items():
            coeffs[sym.j[0]] += val
        if np.abs(coeffs.imag).max() > 0:
            raise UnsupportedFamily("complex coefficients give non-real branch points")
        self.f_coeffs = coeffs.real
        roots = np.roots(self.f_coeffs[::-1])
        scale = max(1.0, np.abs(roots).max())
        if np.abs(roots.imag).max() > 1e-9 * scale:
            raise UnsupportedFamily("branch points must be real for the period construction")
        self.roots = np.sort(roots.real)
        gaps = np.diff(self.roots)
        if gaps.min() < 1e-8 * scale:
            raise UnsupportedFamily("branch points are not distinct (singular curve)")
        self.scale = scale

    @property
    def genus(self) -> int:
        return self.sg.genus

    @property
    def sequence(self):
        return list(self.sg.a)

    @cached_property
    def family(self):
        """The symbolic family whose lambdas are evaluated at :attr:`scalars`."""
        return build_family(self.sg, "symbolic")

    @cached_property
    def scalars(self):
        out = {sym.name(): 0j for sym in self.family.lambdas}
        for sym, val in self.lambdas.items():
            out[sym.name()] = val
        return out

    def f(self, x):
        return np.polyval(self.f_coeffs[::-1], x)

    def point(self, x, sheet: int = 1):
        x = complex(x)
        return (x, sheet * np.sqrt(complex(self.f(x))))

    def residual(self, P) -> float:
        x, y = P
        return abs(y * y - self.f(x)) / max(1.0, abs(y) ** 2)

    def check_point(self, P):
        if self.residual(P) > self.tol:
            raise ValueError(f"point {P} is not on the curve (residual {self.residual(P):.2e})")

    def ring_values(self, P=None, Q=None):
        """Values for every variable of the symbolic family's ring."""
        vals = []
        for name in self.family.ring.names:
            if name[0] in "xy" and name[1:].isdigit():
                pt = P if name[0] == "x" else Q
                vals.append(0j if pt is None else complex(pt[int(name[1:]) - 1]))
            else:
                vals.append(self.scalars[name])
        return vals

    def lambda_json(self):
        return {sym.key(): [v.real, v.imag] for sym, v in sorted(self.lambdas.items())}

    def random_point(self, rng, radius: float | None = None):
        """A point with complex x away from the branch points."""
        radius = radius or 1.5 * self.scale
        while True:
            x = complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius))
            if np.min(np.abs(x - self.roots)) > 0.1 * self.scale:
                return self.point(x, 1 if rng.random() < 0.5 else -1)
