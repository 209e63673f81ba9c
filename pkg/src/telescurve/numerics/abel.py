"""Abel map ``u(P) = int_inf^P du`` for numeric hyperelliptic curves.

The path leaves infinity through the series chart up to ``z0``, then follows
a straight segment in the x-plane while the square root is continued node by
node.  If the continuation lands on the conjugate sheet, the hyperelliptic
involution (``u -> -u``) is applied.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from ..errors import PathThroughBranchPoint, SeriesRadiusFailure
from ..expansion import coordinate_chart, expand_differential
from .model import NumericCurve

SERIES_ORDER = 40
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


def _seg_dist(a: complex, b: complex, pts) -> float:
    d = b - a
    out = math.inf
    for p in pts:
        t = 0.0 if d == 0 else max(0.0, min(1.0, ((p - a) * d.conjugate()).real / abs(d) ** 2))
        out = min(out, abs(a + t * d - p))
    return out


def _eval(series, z):
    return sum(complex(c) * z ** k for k, c in series.items())


class AbelMap:
    def __init__(self, nc: NumericCurve, order: int = SERIES_ORDER, radius: float = 0.2):
        self.nc = nc
        self.g = nc.genus
        chart = coordinate_chart(nc.family, order, nc.scalars)
        self.x_series = chart.xs[0]
        self.y_series = chart.xs[1]
        self.du_series = [expand_differential(nc.family, i, order, chart) for i in range(1, self.g + 1)]
        # antiderivatives vanish at z = 0 since du_i is regular there
        self.U = [[(k + 1, complex(c) / (k + 1)) for k, c in s.items()] for s in self.du_series]
        self.rho = radius / math.sqrt(max(1.0, nc.scale))
        self.tail_tol = 1e-13

    # -- series leg ----------------------------------------------------------
    def series_integral(self, z: complex) -> np.ndarray:
        out = np.array([sum(c * z ** k for k, c in U) for U in self.U])
        last = max(abs(U[-1][1] * z ** U[-1][0]) for U in self.U)
        if last > self.tail_tol * max(1.0, np.abs(out).max()):
            raise SeriesRadiusFailure(f"series tail {last:.1e} too large at |z|={abs(z):.3g}")
        return out

    def chart_point(self, z: complex):
        return (_eval(self.x_series, z), _eval(self.y_series, z))

    # -- quadrature leg --------------------------------------------------------
    def _integrand(self, x, y):
        g = self.g
        return np.array([-(x ** (g - i)) / (2 * y) for i in range(1, g + 1)])

    def _pieces(self, a: complex, b: complex, depth: int = 0):
        d = _seg_dist(a, b, self.nc.roots)
        if abs(b - a) <= 0.5 * d or depth > 40:
            return [(a, b)]
        mid = (a + b) / 2
        return self._pieces(a, mid, depth + 1) + self._pieces(mid, b, depth + 1)

    def segment_integral(self, a: complex, b: complex, y_start: complex):
        total = np.zeros(self.g, dtype=complex)
        y_prev = y_start
        for pa, pb in self._pieces(a, b):
            half = (pb - pa) / 2
            for t, w in zip(_GL_NODES, _GL_WEIGHTS):
                x = pa + half * (t + 1)
                r = cmath.sqrt(self.nc.f(x))
                y = r if abs(r - y_prev) <= abs(r + y_prev) else -r
                if abs(y - y_prev) > 0.5 * abs(y_prev):
                    raise PathThroughBranchPoint(f"sheet tracking ambiguous near x={x:.4g}")
                total += w * half * self._integrand(x, y)
                y_prev = y
            r = cmath.sqrt(self.nc.f(pb))
            y_prev = r if abs(r - y_prev) <= abs(r + y_prev) else -r
        return total, y_prev

    def _start_angle(self, x_target: complex, radius: float):
        base = cmath.phase(x_target) if x_target != 0 else 0.0
        margin = 0.02 * self.nc.scale
        end_gap = np.min(np.abs(x_target - self.nc.roots))
        need = min(margin, 0.5 * end_gap)
        for k in range(0, 25):
            off = (k + 1) // 2 * 0.13 * (1 if k % 2 else -1)
            X0 = radius * cmath.exp(1j * (base + off))
            if _seg_dist(X0, x_target, self.nc.roots) > need:
                return X0
        raise PathThroughBranchPoint(f"no straight path from infinity to x={x_target}")

    def __call__(self, P) -> np.ndarray:
        x, y = complex(P[0]), complex(P[1])
        self.nc.check_point((x, y))
        radius = self.rho ** -2
        if abs(x) >= radius:
            z = x ** -0.5
            if abs(z) > self.rho * 1.0001:
                raise SeriesRadiusFailure("point outside the series disc")
            xs, ys = self.chart_point(z)
            u = self.series_integral(z)
            return u if abs(ys - y) <= abs(ys + y) else -u
        X0 = self._start_angle(x, radius)
        z0 = X0 ** -0.5
        x0, y0 = self.chart_point(z0)
        u = self.series_integral(z0)
        seg, y_end = self.segment_integral(x0, x, y0)
        u = u + seg
        if abs(y_end - y) <= abs(y_end + y):
            return u
        return -u

    def sum(self, points) -> np.ndarray:
        total = np.zeros(self.g, dtype=complex)
        for P in points:
            total = total + self(P)
        return total

    def chart_image(self, z: complex):
        """``(P(z), u(P(z)))`` for a point given by its local parameter."""
        return self.chart_point(z), self.series_integral(z)


def abel_map(nc: NumericCurve, points, amap: AbelMap | None = None) -> np.ndarray:
    amap = amap or AbelMap(nc)
    return amap.sum(points)
