"""Numeric checks of the inversion formulas, the Klein-type identity and the
analytic properties of sigma on the supported curves."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateConfiguration, DegenerateDivisor
from ..fs import admissible_k, alpha, inversion_formula, mu, phi_value
from ..report import VerificationReport
from ..secondkind import SecondKindBasis, solve_symmetry
from .abel import AbelMap
from .model import NumericCurve
from .periods import PeriodMatrices, compute_periods
from .sigma import SigmaEvaluator, find_characteristic


@dataclass
class NumericSetup:
    """Everything needed to evaluate both sides of the identities."""

    nc: NumericCurve
    basis: SecondKindBasis
    pm: PeriodMatrices
    amap: AbelMap
    ev: SigmaEvaluator

    @classmethod
    def build(cls, seq, lambdas=None, seed: int = 0, periods: PeriodMatrices | None = None,
              eps: float = 1e-15):
        nc = NumericCurve(seq, lambdas)
        basis = solve_symmetry(nc.family)
        amap = AbelMap(nc)
        pm = periods
        if pm is None or not len(pm.delta_p):
            pm = pm or compute_periods(nc, basis)
            pm = find_characteristic(pm, amap, np.random.default_rng(seed), sum(nc.sg.partition))
        return cls(nc, basis, pm, amap, SigmaEvaluator(pm, eps))


def general_points(setup: NumericSetup, k: int, rng, tries: int = 50):
    """``k`` random points whose divisor is general (nonzero denominator psi)."""
    sg = setup.nc.sg
    for _ in range(tries):
        pts = [setup.nc.random_point(rng) for _ in range(k)]
        try:
            den = mu(sg, k, 1, pts).denominator
        except DegenerateDivisor:
            continue
        scale = max(1.0, *(abs(complex(phi_value(sg, n, p))) for p in pts for n in range(1, k + 2)))
        if abs(complex(den)) > 1e-6 * scale ** k:
            return pts
    raise DegenerateConfiguration("could not draw a general divisor")


def verify_inversion(setup: NumericSetup, k: int, points, tol: float = 1e-6, seed=None,
                     report: VerificationReport | None = None) -> VerificationReport:
    rep = VerificationReport() if report is None else report
    sg = setup.nc.sg
    doc = inversion_formula(sg, k)
    u = setup.amap.sum(points)
    for e in doc.entries:
        rhs = e.sign * mu(sg, k, e.mu_index, points).value()
        if e.kind == "wp":
            lhs = setup.ev.wp(1, e.i, u)
            check = f"inversion_wp_1{e.i}"
        else:
            lhs = setup.ev.sigma_ratio(e.i, e.base, u)
            check = f"inversion_sigma_{e.i}_over_{e.base}"
        res = abs(lhs - rhs) / max(1.0, abs(rhs))
        rep.numeric(f"{check}_k{k}", e.lhs_text(), complex(lhs), complex(rhs), res, tol, seed)
    return rep


def klein_sides(setup: NumericSetup, P, Q, anchors):
    nc = setup.nc
    g = nc.genus
    if abs(P[0] - Q[0]) < 1e-8 * nc.scale:
        raise DegenerateConfiguration("P and Q share an x coordinate")
    if len(anchors) != g - 1:
        raise DegenerateConfiguration(f"need {g - 1} anchor points")
    lhs = complex(setup.basis.kernel.evaluate(nc.ring_values(P, Q))) / (P[0] - Q[0]) ** 2
    v = setup.amap(P) - setup.amap(Q) - setup.amap.sum(anchors)
    W = setup.ev.wp_matrix(v)
    sg = nc.sg
    fp = np.array([complex(phi_value(sg, g + 1 - k, P)) for k in range(1, g + 1)])
    fq = np.array([complex(phi_value(sg, g + 1 - k, Q)) for k in range(1, g + 1)])
    return lhs, complex(fp @ W @ fq)


def verify_klein(setup: NumericSetup, P, Q, anchors, tol: float = 1e-5, seed=None,
                 report: VerificationReport | None = None) -> VerificationReport:
    rep = VerificationReport() if report is None else report
    lhs, rhs = klein_sides(setup, P, Q, anchors)
    res = abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)
    rep.numeric("klein_identity", "F(P,Q)/(x1-y1)^2 = sum wp_kl phi phi", lhs, rhs, res, tol, seed)
    return rep


def fit_slope(xs, ys) -> float:
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def verify_vanishing(setup: NumericSetup, k: int = 1, points=None, tol: float = 1e-8,
                     slope_tol: float = 0.05, seed=None,
                     report: VerificationReport | None = None) -> VerificationReport:
    """One-point stratum checks for genus two: sigma vanishes, sigma_1 does not,
    and the vanishing order of sigma_{g-k} near infinity."""
    rep = VerificationReport() if report is None else report
    g = setup.nc.genus
    ev = setup.ev
    for P in points or []:
        u = setup.amap.sum([P])
        s, d1, _ = ev.all(u)
        rep.numeric("sigma_vanishes_on_stratum", "sigma(u^[1]) = 0", complex(s), 0.0,
                    abs(s) / ev.scale, tol, seed)
        lower = abs(d1[g - k - 1]) / ev.scale
        rep.add("sigma_derivative_nonzero", f"sigma_{g - k}(u^[1]) != 0", complex(d1[g - k - 1]),
                0.0, lower, 1e-6, lower > 1e-6, seed)
    zs = np.geomspace(1e-3, 1e-2, 12)
    vals = []
    for z in zs:
        _, u = setup.amap.chart_image(complex(z))
        vals.append(abs(ev.sigma_d1(u)[g - k - 1]))
    slope = fit_slope(zs, vals)
    want = alpha(setup.nc.sg, k)
    rep.numeric(f"vanishing_exponent_k{k}", f"alpha_{k} = N({k + 1}) - N({k})", slope, want,
                abs(slope - want), slope_tol, seed)
    return rep


def random_u(setup: NumericSetup, rng, size: float = 0.4):
    om = np.abs(setup.pm.om1).max()
    return size * om * (rng.normal(size=setup.nc.genus) + 1j * rng.normal(size=setup.nc.genus))


def verify_parity(setup: NumericSetup, rng, count: int = 10, tol: float = 1e-10, seed=None,
                  report: VerificationReport | None = None) -> VerificationReport:
    rep = VerificationReport() if report is None else report
    sgn = (-1) ** sum(setup.nc.sg.partition)
    worst, pair = 0.0, (0j, 0j)
    for _ in range(count):
        u = random_u(setup, rng)
        a, b = setup.ev.sigma(-u), sgn * setup.ev.sigma(u)
        r = abs(a - b) / max(abs(a), abs(b), 1e-300)
        if r >= worst:
            worst, pair = r, (a, b)
    rep.numeric("sigma_parity", "sigma(-u) = (-1)^|mu| sigma(u)", *pair, worst, tol, seed)
    zero = setup.ev.sigma(np.zeros(setup.nc.genus))
    if sgn < 0:
        rep.numeric("sigma_zero_at_origin", "sigma(0) = 0", zero, 0.0,
                    abs(zero) / setup.ev.scale, 1e-12, seed)
    return rep


def verify_quasiperiodicity(setup: NumericSetup, rng, count: int = 5, tol: float = 1e-8,
                            seed=None, report: VerificationReport | None = None):
    rep = VerificationReport() if report is None else report
    g = setup.nc.genus
    shifts = []
    for j in range(2 * g):
        m = np.zeros(2 * g)
        m[j] = 1
        shifts.append(m)
    shifts += [rng.integers(-2, 3, size=2 * g).astype(float) for _ in range(count)]
    worst, pair = 0.0, (0j, 0j)
    for m in shifts:
        m1, m2 = m[:g], m[g:]
        u = random_u(setup, rng)
        lhs = setup.ev.sigma(u + setup.pm.lattice_vector(m1, m2))
        rhs = setup.ev.quasi_factor(u, m1, m2) * setup.ev.sigma(u)
        r = abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)
        if r >= worst:
            worst, pair = r, (complex(lhs), complex(rhs))
    rep.numeric("sigma_quasiperiodicity", "sigma(u + lattice) = factor * sigma(u)", *pair,
                worst, tol, seed)
    return rep


def verify_derivatives(setup: NumericSetup, rng, count: int = 10, tol: float = 1e-6, seed=None,
                       report: VerificationReport | None = None) -> VerificationReport:
    """Analytic gradient and Hessian of sigma against central differences."""
    rep = VerificationReport() if report is None else report
    ev = setup.ev
    g = setup.nc.genus
    h = 1e-5 * max(1.0, float(np.abs(setup.pm.om1).max()))
    worst1 = worst2 = 0.0
    for _ in range(count):
        u = random_u(setup, rng)
        s, d1, d2 = ev.all(u)
        fd1 = np.zeros(g, dtype=complex)
        fd2 = np.zeros((g, g), dtype=complex)
        for a in range(g):
            e = np.zeros(g)
            e[a] = h
            fd1[a] = (ev.sigma(u + e) - ev.sigma(u - e)) / (2 * h)
            ga, gb = ev.sigma_d1(u + e), ev.sigma_d1(u - e)
            fd2[a] = (ga - gb) / (2 * h)
        worst1 = max(worst1, np.abs(fd1 - d1).max() / max(np.abs(d1).max(), 1e-300))
        worst2 = max(worst2, np.abs(fd2 - d2).max() / max(np.abs(d2).max(), 1e-300))
    rep.numeric("sigma_gradient_fd", "grad sigma vs central differences", worst1, 0.0, worst1,
                tol, seed)
    rep.numeric("sigma_hessian_fd", "hess sigma vs central differences", worst2, 0.0, worst2,
                tol, seed)
    return rep


def verify_truncation(setup: NumericSetup, rng, eps: float = 1e-12, count: int = 5, seed=None,
                      report: VerificationReport | None = None) -> VerificationReport:
    """Halving the theta tolerance moves sigma by less than the original one."""
    rep = VerificationReport() if report is None else report
    worst = 0.0
    for _ in range(count):
        u = random_u(setup, rng)
        a = setup.ev.sigma(u, eps=eps)
        b = setup.ev.sigma(u, eps=eps / 2)
        worst = max(worst, abs(a - b) / max(abs(b), 1e-300))
    rep.numeric("theta_truncation_stability", "sigma stable when eps halves", worst, 0.0,
                worst, eps, seed)
    return rep


def verify_path_invariance(setup: NumericSetup, k: int, points, tol: float = 1e-7, seed=None,
                           report: VerificationReport | None = None) -> VerificationReport:
    """Shift the Abel image by a lattice vector and compare the formula sides."""
    rep = VerificationReport() if report is None else report
    g = setup.nc.genus
    u = setup.amap.sum(points)
    shift = setup.pm.lattice_vector(np.ones(g), np.eye(g)[0])
    doc = inversion_formula(setup.nc.sg, k)
    for e in doc.entries:
        if e.kind == "wp":
            a, b = setup.ev.wp(1, e.i, u), setup.ev.wp(1, e.i, u + shift)
        else:
            a = setup.ev.sigma_ratio(e.i, e.base, u)
            b = setup.ev.sigma_ratio(e.i, e.base, u + shift)
        rep.numeric(f"path_invariance_{e.kind}_{e.i}_k{k}", "formula invariant under lattice shift",
                    complex(a), complex(b), abs(a - b) / max(1.0, abs(a)), tol, seed)
    return rep


NUMERIC_CHECKS = ("inversion", "klein", "parity", "quasiperiod", "derivatives", "truncation",
                  "vanishing", "path")


def run_numeric_suite(setup: NumericSetup, seed: int = 0, checks=NUMERIC_CHECKS,
                      tol: float | None = None, configs: int = 5) -> VerificationReport:
    """The numeric checks selected by name, each drawing from its own seeded stream."""
    rep = VerificationReport()
    g = setup.nc.genus
    unknown = set(checks) - set(NUMERIC_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(sorted(unknown))}")

    def stream(tag):
        return np.random.default_rng([seed, NUMERIC_CHECKS.index(tag)])

    if "inversion" in checks:
        rng = stream("inversion")
        lo, hi = admissible_k(setup.nc.sg)
        for k in range(lo, hi + 1):
            for _ in range(configs):
                pts = general_points(setup, k, rng)
                verify_inversion(setup, k, pts, tol or 1e-6, seed, rep)
    if "klein" in checks:
        rng = stream("klein")
        for _ in range(configs if g == 1 else 3):
            P, Q = setup.nc.random_point(rng), setup.nc.random_point(rng)
            anchors = [setup.nc.random_point(rng) for _ in range(g - 1)]
            verify_klein(setup, P, Q, anchors, tol or (1e-6 if g == 1 else 1e-5), seed, rep)
    if "parity" in checks:
        verify_parity(setup, stream("parity"), tol=tol or 1e-10, seed=seed, report=rep)
    if "quasiperiod" in checks:
        verify_quasiperiodicity(setup, stream("quasiperiod"), tol=tol or 1e-8, seed=seed, report=rep)
    if "derivatives" in checks:
        verify_derivatives(setup, stream("derivatives"), tol=tol or 1e-6, seed=seed, report=rep)
    if "truncation" in checks:
        verify_truncation(setup, stream("truncation"), seed=seed, report=rep)
    if "vanishing" in checks and g == 2:
        rng = stream("vanishing")
        pts = [setup.nc.random_point(rng) for _ in range(configs)]
        verify_vanishing(setup, 1, pts, seed=seed, report=rep)
    if "path" in checks:
        rng = stream("path")
        lo, hi = admissible_k(setup.nc.sg)
        for k in range(lo, hi + 1):
            verify_path_invariance(setup, k, general_points(setup, k, rng), seed=seed, report=rep)
    return rep
