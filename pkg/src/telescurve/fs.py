"""Frobenius-Stickelberger determinants and the Jacobi inversion formulas.

Points are either :class:`PointSymbol` objects, whose coordinates are free
variables of a multi-point ring, or plain coordinate tuples of numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .curve import CurveFamily
from .errors import DegenerateDivisor, OutOfRangeK
from .expansion import LaurentSeries, coordinate_chart, expand_function
from .polycore import Polynomial, Ring, determinant
from .report import VerificationReport
from .semigroup import SemigroupData


@dataclass(frozen=True)
class PointSymbol:
    index: int


def point_ring(sg: SemigroupData, npoints: int) -> Ring:
    names, weights = [], []
    for j in range(1, npoints + 1):
        for c in range(1, sg.m + 1):
            names.append(f"x{c}(P{j})")
            weights.append(sg.a[c - 1])
    return Ring(names, weights)


def _coords(sg, point, ring):
    if isinstance(point, PointSymbol):
        return [ring.gen(f"x{c}(P{point.index})") for c in range(1, sg.m + 1)]
    return list(point)


def phi_value(sg: SemigroupData, n: int, coords):
    out = 1
    for x, e in zip(coords, sg.phi(n)):
        if e:
            out = out * x ** e
    return out


def fs_matrix(sg: SemigroupData, points, ncols: int, ring: Ring | None = None):
    """Rows ``(phi_1(P), ..., phi_ncols(P))`` for each point."""
    if ring is None and any(isinstance(p, PointSymbol) for p in points):
        ring = point_ring(sg, max(p.index for p in points if isinstance(p, PointSymbol)))
    rows = []
    for p in points:
        xs = _coords(sg, p, ring)
        rows.append([phi_value(sg, n, xs) for n in range(1, ncols + 1)])
    return rows


def psi(sg: SemigroupData, k: int, points, which="full", ring: Ring | None = None):
    """``psi_{k+1}(P_1..P_k; P)`` for ``which="full"`` (``points`` has k+1
    entries, the last being P) or the minor ``psi_k^{(i)}(P_1..P_k)`` for
    ``which=i``."""
    if which == "full":
        if len(points) != k + 1:
            raise ValueError(f"need {k + 1} points, got {len(points)}")
        return determinant(fs_matrix(sg, points, k + 1, ring))
    i = int(which)
    if len(points) != k:
        raise ValueError(f"need {k} points, got {len(points)}")
    if not 1 <= i <= k + 1:
        raise ValueError(f"column {i} outside [1, {k + 1}]")
    if k == 0:
        return 1
    rows = fs_matrix(sg, points, k + 1, ring)
    return determinant([r[: i - 1] + r[i:] for r in rows])


def _zero(x) -> bool:
    return x.is_zero() if isinstance(x, Polynomial) else x == 0


@dataclass
class MuExpression:
    """``mu_{k,i} = psi_k^{(i)} / psi_k^{(k+1)}``."""

    k: int
    i: int
    numerator: object
    denominator: object

    def value(self, tol: float = 0.0):
        if isinstance(self.numerator, Polynomial) or isinstance(self.denominator, Polynomial):
            raise TypeError("symbolic expression has no numeric value")
        if _zero(self.numerator):
            return 0
        if abs(self.denominator) <= tol:
            raise DegenerateDivisor(f"psi_{self.k}^({self.k + 1}) vanishes at these points")
        if isinstance(self.numerator, (int, Fraction)) and isinstance(self.denominator, (int, Fraction)):
            return Fraction(self.numerator) / self.denominator
        return self.numerator / self.denominator

    def equals(self, other) -> bool:
        """Exact comparison of ratios by cross-multiplication."""
        if isinstance(other, MuExpression):
            return self.numerator * other.denominator == other.numerator * self.denominator
        return self.numerator == other * self.denominator


def mu(sg: SemigroupData, k: int, i: int, points, ring: Ring | None = None) -> MuExpression:
    if k == 0:
        return MuExpression(0, i, 1 if i == 1 else 0, 1)
    if i >= k + 2:
        return MuExpression(k, i, 0, 1)
    den = psi(sg, k, points, k + 1, ring)
    if not isinstance(den, Polynomial) and den == 0:
        raise DegenerateDivisor(f"psi_{k}^({k + 1}) vanishes at these points")
    return MuExpression(k, i, psi(sg, k, points, i, ring), den)


def symbolic_points(k: int):
    return [PointSymbol(j) for j in range(1, k + 1)]


# -- inversion formulas ---------------------------------------------------------

def admissible_k(sg: SemigroupData):
    g = sg.genus
    lo = max(1, g - sg.a_min)
    return lo, g


def check_k(sg: SemigroupData, k: int):
    lo, hi = admissible_k(sg)
    if not lo <= k <= hi:
        raise OutOfRangeK(k, lo, hi)


@dataclass
class FormulaEntry:
    """``lhs = sign * det(cols numerator) / det(cols denominator)``."""

    kind: str  # "wp" or "sigma_ratio"
    k: int
    i: int  # wp_{1,i} or sigma_i
    base: int | None  # sigma_{base} in the denominator of a sigma ratio
    sign: int
    mu_index: int  # the i of mu_{k, .}
    num_cols: list
    den_cols: list

    def lhs_text(self):
        if self.kind == "wp":
            return f"wp_{{1,{self.i}}}(u^[{self.k}])"
        return f"sigma_{self.i}(u^[{self.k}]) / sigma_{self.base}(u^[{self.k}])"

    def lhs_latex(self):
        u = rf"\big(u^{{[{self.k}]}}\big)"
        if self.kind == "wp":
            return rf"\wp_{{1,{self.i}}}{u}"
        return rf"\frac{{\sigma_{{{self.i}}}{u}}}{{\sigma_{{{self.base}}}{u}}}"

    def to_dict(self, sg):
        return {
            "lhs": self.lhs_text(),
            "sign": self.sign,
            "numerator": [_mono_text(sg.phi(n)) for n in self.num_cols],
            "denominator": [_mono_text(sg.phi(n)) for n in self.den_cols],
        }


def _mono_text(exps, latex=False, point=None):
    parts = []
    for c, e in enumerate(exps, start=1):
        if not e:
            continue
        base = f"x_{c}" if latex else f"x{c}"
        if e > 1:
            base += f"^{e}"
        if point is not None:
            base += f"(P_{point})" if latex else f"(P{point})"
        parts.append(base)
    if not parts:
        return "1"
    return "".join(parts) if latex else "*".join(parts)


def _entry(sg, n, j, latex):
    return _mono_text(sg.phi(n), latex, j)


def _expanded_2x2(sg, cols, sign, latex):
    """``a d - b c`` with factors ordered by column; a negative sign swaps the
    two products instead of prefixing a minus."""
    def prod(pairs):
        factors = [_entry(sg, n, j, latex) for n, j in sorted(pairs)]
        factors = [f for f in factors if f != "1"]
        if not factors:
            return "1"
        return "".join(factors) if latex else "*".join(factors)

    (c1, c2) = cols
    first = prod([(c1, 1), (c2, 2)])
    second = prod([(c2, 1), (c1, 2)])
    if sign < 0:
        first, second = second, first
    return f"{first}-{second}" if latex else f"{first} - {second}"


def _det_block(sg, cols, latex):
    k = len(cols)
    if latex:
        rows = [" & ".join(_entry(sg, n, j, True) for n in cols) for j in range(1, k + 1)]
        spec = "c" * k
        return (rf"\left|\begin{{array}}{{{spec}}}" + r" \\ ".join(rows)
                + r"\end{array}\right|")
    rows = [", ".join(_entry(sg, n, j, False) for n in cols) for j in range(1, k + 1)]
    return "det[" + "; ".join(rows) + "]"


def _rhs(sg, entry: FormulaEntry, latex: bool):
    k = entry.k
    sign = entry.sign
    if k == 1:
        num = _entry(sg, entry.num_cols[0], 1, latex)
        den = _entry(sg, entry.den_cols[0], 1, latex)
    elif k == 2:
        num = _expanded_2x2(sg, entry.num_cols, sign, latex)
        den = _expanded_2x2(sg, entry.den_cols, 1, latex)
        sign = 1
    else:
        num = _det_block(sg, entry.num_cols, latex)
        den = _det_block(sg, entry.den_cols, latex)
    prefix = "-" if sign < 0 else ""
    if den == "1":
        return prefix + num
    if latex:
        return prefix + rf"\frac{{{num}}}{{{den}}}"
    if k == 2:
        return f"{prefix}({num}) / ({den})"
    return f"{prefix}{num} / {den}"


@dataclass
class FormulaDocument:
    sg: SemigroupData
    k: int
    entries: list = field(default_factory=list)

    def render(self, fmt: str = "text") -> str:
        if fmt not in ("text", "latex"):
            raise ValueError(f"unknown format {fmt!r}")
        latex = fmt == "latex"
        seq = ",".join(map(str, self.sg.a))
        lines = []
        if latex:
            lines.append(f"% ({seq}), k={self.k}")
        else:
            lines.append(f"# ({seq}), k={self.k}, g={self.sg.genus}")
            phis = ", ".join(f"phi_{n}={_mono_text(self.sg.phi(n))}"
                             for n in range(1, self.k + 2))
            lines.append(f"# {phis}")
        for e in self.entries:
            if latex:
                lines.append(f"{e.lhs_latex()}={_rhs(self.sg, e, True)}")
            else:
                lines.append(f"{e.lhs_text()} = {_rhs(self.sg, e, False)}")
        return "\n".join(lines) + "\n"

    def to_dict(self):
        return {"sequence": list(self.sg.a), "k": self.k,
                "entries": [e.to_dict(self.sg) for e in self.entries]}


def inversion_formula(sg, k: int) -> FormulaDocument:
    if isinstance(sg, CurveFamily):
        sg = sg.sg
    check_k(sg, k)
    g = sg.genus
    cols = list(range(1, k + 2))
    den_cols = cols[:k]
    doc = FormulaDocument(sg, k)
    if k == g:
        for i in range(1, g + 1):
            j = g + 1 - i
            doc.entries.append(FormulaEntry(
                "wp", k, i, None, (-1) ** (i - 1), j,
                [c for c in cols if c != j], den_cols))
    else:
        for i in range(g - k + 1, g + 1):
            j = g + 1 - i
            doc.entries.append(FormulaEntry(
                "sigma_ratio", k, i, g - k, (-1) ** (k + i - g), j,
                [c for c in cols if c != j], den_cols))
    return doc


def evaluate_entry(sg: SemigroupData, entry: FormulaEntry, points):
    """Numeric right-hand side of an inversion formula at concrete points."""
    return entry.sign * mu(sg, entry.k, entry.mu_index, points).value()


# -- series-level checks -------------------------------------------------------

def _psi_series_last(sg, k, cols, chart, ring, upto):
    """``det`` of the FS minor with columns ``cols`` where the last row is the
    series chart of P_k and the other rows are symbolic points."""
    others = symbolic_points(k - 1)
    rows = fs_matrix(sg, others, upto, ring) if others else []
    total = LaurentSeries(0, [])
    for pos, c in enumerate(cols):
        rest = [n for n in cols if n != c]
        minor = determinant([[r[n - 1] for n in rest] for r in rows]) if rows else 1
        if _zero(minor):
            continue
        s = expand_function(chart.fam, sg.phi(c), chart.order, chart)
        sgn = -1 if (k - 1 + pos) % 2 else 1
        total = total + s * (minor * sgn)
    return total


def verify_mu_expansion(fam: CurveFamily, k: int, i: int, order: int = 6,
                        chart=None) -> VerificationReport:
    """Leading behaviour of ``mu_{k,i}`` as ``P_k`` tends to infinity."""
    sg = fam.sg
    if not 1 <= i <= k <= sg.genus:
        raise ValueError(f"need 1 <= i <= k <= g, got k={k}, i={i}")
    chart = chart or coordinate_chart(fam, order)
    ring = point_ring(sg, max(k - 1, 1))
    cols = list(range(1, k + 2))
    num = _psi_series_last(sg, k, [c for c in cols if c != i], chart, ring, k + 1)
    den = _psi_series_last(sg, k, cols[:k], chart, ring, k + 1)
    (en, cn), (ed, cd) = num.leading(), den.leading()
    prev = symbolic_points(k - 1)
    want_n = psi(sg, k - 1, prev, i, ring)
    want_d = psi(sg, k - 1, prev, k, ring)
    expected = sg.pole_order(k) - sg.pole_order(k + 1)
    rep = VerificationReport()
    rep.exact(f"mu_expansion_exponent[k={k},i={i}]", "mu_{k,i} ~ z^{N(k)-N(k+1)}",
              en - ed, expected)
    ok = (cn * want_d == cd * want_n) and (cn == want_n) and (cd == want_d)
    rep.exact(f"mu_expansion_coefficient[k={k},i={i}]", "leading coefficient mu_{k-1,i}",
              f"({cn})/({cd})", f"({want_n})/({want_d})", passed=ok)
    return rep


@dataclass(frozen=True)
class VanishingOrder:
    k: int
    i: int
    alpha: int | None  # order of sigma_{g-k}
    beta: int | None  # order of sigma_i


def vanishing_orders(sg) -> list:
    """Predicted orders in ``z_k`` of ``sigma_{g-k}`` and ``sigma_i`` along
    ``u^[k-1] + int_inf^{P_k} du`` for ``g-a <= k <= g-1`` and ``i > g-k``."""
    if isinstance(sg, CurveFamily):
        sg = sg.sg
    g = sg.genus
    lo = max(1, g - sg.a_min)
    out = []
    for k in range(lo, g):
        step = sg.pole_order(k + 1) - sg.pole_order(k)
        strict = k > g - sg.a_min
        for i in range(g - k + 1, g + 1):
            out.append(VanishingOrder(k, i, step if strict else None, 0 if strict else None))
    return out


def alpha(sg, k: int) -> int:
    if isinstance(sg, CurveFamily):
        sg = sg.sg
    g = sg.genus
    if not max(1, g - sg.a_min) <= k <= g - 1:
        raise OutOfRangeK(k, max(1, g - sg.a_min), g - 1)
    for row in vanishing_orders(sg):
        if row.k == k:
            return row.alpha
    return None
