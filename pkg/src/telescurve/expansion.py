"""Laurent expansions at the point at infinity.

The local parameter ``z`` is fixed by ``x1 = z**(-a1)`` exactly; every other
coordinate is ``x_i = z**(-a_i) * (1 + O(z))`` and is solved order by order.
Coefficients may be rationals, complex floats or lambda polynomials.
"""

from __future__ import annotations

from fractions import Fraction

from .curve import CurveFamily, jacobian
from .errors import BranchObstruction, InsufficientOrder
from .polycore import Polynomial


def _is_zero(c) -> bool:
    if isinstance(c, Polynomial):
        return c.is_zero()
    return c == 0


def _recip(c):
    if isinstance(c, Polynomial):
        if not c.is_constant() or c.is_zero():
            raise ZeroDivisionError("leading coefficient is not an invertible constant")
        c = c.constant()
    if isinstance(c, int):
        return Fraction(1, c)
    return 1 / c


EXACT = 10**9  # precision marker for series known exactly


class LaurentSeries:
    """``sum_k coeffs[k-start] z^k + O(z^prec)``.

    Coefficients past the stored list and below ``prec`` are zero; a series
    with ``prec >= EXACT`` is a Laurent polynomial known exactly.
    """

    __slots__ = ("start", "coeffs", "prec")

    def __init__(self, start: int, coeffs, prec: int = EXACT):
        coeffs = list(coeffs[: max(prec - start, 0)])
        while coeffs and _is_zero(coeffs[0]):
            coeffs.pop(0)
            start += 1
        while coeffs and _is_zero(coeffs[-1]):
            coeffs.pop()
        self.start = start if coeffs else min(prec, EXACT)
        self.coeffs = coeffs
        self.prec = prec

    @classmethod
    def monomial(cls, exponent: int, coeff=1, prec: int = EXACT):
        return cls(exponent, [coeff], prec)

    @property
    def exact(self) -> bool:
        return self.prec >= EXACT // 2

    # -- inspection ----------------------------------------------------------
    @property
    def valuation(self) -> int:
        return self.start

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        """``(exponent, coefficient)`` of the lowest known nonzero term."""
        if not self.coeffs:
            raise InsufficientOrder(f"series is zero up to O(z^{self.prec})")
        return self.start, self.coeffs[0]

    def coefficient(self, k: int):
        if k >= self.prec:
            raise InsufficientOrder(f"z^{k} requested, known only below z^{self.prec}")
        if k < self.start or k - self.start >= len(self.coeffs):
            return 0
        return self.coeffs[k - self.start]

    def items(self):
        return [(self.start + i, c) for i, c in enumerate(self.coeffs) if not _is_zero(c)]

    def map(self, f):
        return LaurentSeries(self.start, [f(c) for c in self.coeffs], self.prec)

    def truncate(self, prec: int):
        return LaurentSeries(self.start, self.coeffs, min(prec, self.prec))

    def __repr__(self):
        terms = " + ".join(f"({c})*z^{k}" for k, c in self.items()[:6])
        tail = "" if self.exact else f" + O(z^{self.prec})"
        return f"LaurentSeries({terms or '0'}{tail})"

    # -- arithmetic ----------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentSeries):
            return other
        return LaurentSeries(0, [other])

    def __add__(self, other):
        other = self._coerce(other)
        prec = min(self.prec, other.prec)
        parts = [s for s in (self, other) if s.coeffs]
        if not parts:
            return LaurentSeries(0, [], prec)
        start = min(s.start for s in parts)
        end = min(prec, max(s.start + len(s.coeffs) for s in parts))
        out = [0] * max(end - start, 0)
        for s in parts:
            for i, c in enumerate(s.coeffs):
                k = s.start + i - start
                if k < len(out):
                    out[k] = out[k] + c
        return LaurentSeries(start, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return self.map(lambda c: -c)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return self.map(lambda v: v * other)
        if self.is_zero() or other.is_zero():
            return LaurentSeries(0, [], min(self.start + other.prec, other.start + self.prec))
        start = self.start + other.start
        prec = min(self.start + other.prec, other.start + self.prec, EXACT)
        n = min(prec - start, len(self.coeffs) + len(other.coeffs) - 1)
        out = [0] * n
        for i, a in enumerate(self.coeffs[:n]):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs[: n - i]):
                out[i + j] = out[i + j] + a * b
        return LaurentSeries(start, out, prec)

    def __rmul__(self, other):
        return self.map(lambda v: other * v)

    def inverse(self):
        v, lead = self.leading()
        inv = _recip(lead)
        a = self.coeffs
        if len(a) == 1:
            return LaurentSeries(-v, [inv], -v + (self.prec - self.start))
        if self.exact:
            raise InsufficientOrder("inverse of an exact series needs a truncation order")
        n = self.prec - self.start
        out = [inv]
        for k in range(1, n):
            acc = 0
            for j in range(1, min(k, len(a) - 1) + 1):
                acc = acc + a[j] * out[k - j]
            out.append(-acc * inv)
        return LaurentSeries(-v, out, -v + n)

    def __truediv__(self, other):
        if isinstance(other, LaurentSeries):
            return self * other.inverse()
        return self * _recip(other)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = LaurentSeries(0, [1])
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def deriv(self):
        return LaurentSeries(self.start - 1,
                             [c * (self.start + i) for i, c in enumerate(self.coeffs)],
                             self.prec - 1)


# -- evaluating curve polynomials on series -----------------------------------

class SeriesChart:
    """The coordinate series of a family plus an evaluator for x-polynomials."""

    def __init__(self, fam: CurveFamily, xs, order: int, scalars=None):
        self.fam = fam
        self.xs = xs
        self.order = order
        self.scalars = scalars
        self._powers = {}

    def _power(self, k: int, e: int):
        key = (k, e)
        if key not in self._powers:
            self._powers[key] = self.xs[k] ** e
        return self._powers[key]

    def evaluate(self, p: Polynomial):
        return evaluate_on_series(self.fam, p, self.xs, self.scalars, self._power)


def _lambda_coefficient(fam, e, c, scalars):
    """Coefficient of a term after splitting off its x/y part."""
    names = fam.ring.names
    lam = [(names[i], v) for i in range(2 * fam.m, len(e)) if (v := e[i])]
    if not lam:
        return c
    if scalars is not None:
        out = complex(c) if not isinstance(c, (int, Fraction)) else c
        for name, v in lam:
            out = out * scalars.get(name, 0) ** v
        return out
    exps = [0] * len(e)
    for i in range(2 * fam.m, len(e)):
        exps[i] = e[i]
    return Polynomial(fam.ring, {tuple(exps): c})


def evaluate_on_series(fam: CurveFamily, p: Polynomial, xs, scalars=None, power=None):
    """Substitute coordinate series for ``x1..xm`` in an x-polynomial."""
    m = fam.m
    power = power or (lambda k, e: xs[k] ** e)
    total = None
    for e, c in p.terms.items():
        if any(e[m:2 * m]):
            raise ValueError("evaluate_on_series expects a polynomial in the x variables")
        coeff = _lambda_coefficient(fam, e, c, scalars)
        if _is_zero(coeff):
            continue
        term = None
        for k in range(m):
            if e[k]:
                s = power(k, e[k])
                term = s if term is None else term * s
        if term is None:
            term = LaurentSeries(0, [1])
        term = term * coeff
        total = term if total is None else total + term
    return total if total is not None else LaurentSeries(0, [])


def expand_coordinates(fam: CurveFamily, order: int, scalars=None):
    """Series for ``x1..xm`` with ``order`` correction terms past the leading one.

    ``scalars`` maps lambda names to numbers for a symbolic family, which makes
    the coefficients numeric (e.g. complex) instead of lambda polynomials.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    sg = fam.sg
    m = sg.m
    one = 1
    us = [[one] + [0] * order for _ in range(m)]

    def u_series(k):
        return LaurentSeries(0, us[k], order + 1)

    zs = [LaurentSeries.monomial(-sg.a[k], 1, -sg.a[k] + order + 1) for k in range(m)]

    def coords():
        return [u_series(k) * zs[k] for k in range(m)]

    for i in range(2, m + 1):
        ci = sg.c[i - 1]
        if ci == 0:
            raise BranchObstruction(f"degenerate exponent for x{i}")
    for k in range(1, order + 1):
        for i in range(2, m + 1):
            xs = coords()
            Fi = fam.F[i - 2]
            r = evaluate_on_series(fam, Fi, xs, scalars)
            shift = sg.a[i - 1] * sg.c[i - 1]
            coeff = r.coefficient(k - shift)
            us[i - 1][k] = -coeff * Fraction(1, sg.c[i - 1])
    return coords()


def coordinate_chart(fam: CurveFamily, order: int, scalars=None) -> SeriesChart:
    return SeriesChart(fam, expand_coordinates(fam, order, scalars), order, scalars)


def curve_residuals(fam: CurveFamily, xs, scalars=None):
    """Each ``F_i`` evaluated on the coordinate series."""
    return [evaluate_on_series(fam, Fi, xs, scalars) for Fi in fam.F]


def expand_function(fam: CurveFamily, exps, order: int, chart: SeriesChart | None = None):
    """Series of ``prod x_i^{e_i}``; leading term ``z^{-weight}``."""
    chart = chart or coordinate_chart(fam, order)
    if chart.order < order:
        raise InsufficientOrder(f"chart has order {chart.order} < {order}")
    out = LaurentSeries(0, [1])
    for k, e in enumerate(exps):
        if e:
            out = out * chart._power(k, e)
    return out


def detG1_series(fam: CurveFamily, chart: SeriesChart):
    bundle = jacobian(fam)
    den = fam.normal_form(fam.swap(bundle.detGk[0]))
    return chart.evaluate(den)


def expand_differential(fam: CurveFamily, i: int, order: int, chart: SeriesChart | None = None):
    """Density of ``du_i = -phi_{g+1-i}/det G_1 dx_1`` against ``dz``."""
    g = fam.sg.genus
    if not 1 <= i <= g:
        raise ValueError(f"i={i} outside [1, {g}]")
    chart = chart or coordinate_chart(fam, order)
    num = chart.evaluate(fam.mono(fam.sg.phi(g + 1 - i)))
    den = detG1_series(fam, chart)
    dx1 = chart.xs[0].deriv()
    return -(num * dx1) / den


def expand_dr(fam: CurveFamily, numerator: Polynomial, chart: SeriesChart):
    """Density of ``numerator/det G_1 dx_1`` against ``dz`` for an x-polynomial
    numerator (used for the second-kind differentials)."""
    num = chart.evaluate(numerator)
    den = detG1_series(fam, chart)
    return (num * chart.xs[0].deriv()) / den
