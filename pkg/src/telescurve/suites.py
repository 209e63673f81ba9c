"""Exact verification suites grouped by topic, as run by ``telescurve verify symbolic``."""

from __future__ import annotations

import time

import numpy as np

from .curve import (
    CurveFamily,
    build_family,
    coefficient_spot_checks,
    expected_detGk_degree,
    expected_detH_degree,
    leading_coefficient_detGk,
    matrices,
    random_lambdas,
)
from .expansion import coordinate_chart, curve_residuals, expand_differential
from .fs import verify_mu_expansion
from .report import VerificationReport
from .secondkind import solve_symmetry, verify_basis, verify_recurrence
from .semigroup import sieve_genus

SYMBOLIC_CHECKS = ("semigroup", "lemma", "secondkind", "expansion", "mu")


def semigroup_checks(fam: CurveFamily, rep: VerificationReport):
    sg = fam.sg
    rep.exact("genus_formula_vs_sieve", "genus by formula = count of gaps", sg.genus,
              sieve_genus(sg.a))
    rep.exact("gap_count", "number of gaps = genus", len(sg.gaps), sg.genus)


def lemma_checks(fam: CurveFamily, rep: VerificationReport, bundle):
    sg = fam.sg
    for k in range(1, sg.m + 1):
        coeff, gamma, red = leading_coefficient_detGk(fam, bundle, k)
        want = (-1) ** (k + 1) * sg.a[k - 1]
        rep.exact(f"detG{k}_leading_coefficient", f"eps_{k} = (-1)^{k + 1} a_{k}",
                  str(coeff), str(want), passed=(coeff == want))
        rep.exact(f"detG{k}_homogeneous_degree", "det G_k is homogeneous of the predicted weight",
                  sorted(bundle.detGk[k - 1].weighted_degrees()), [expected_detGk_degree(sg, k)])
    rep.exact("detH_homogeneous_degree", "det H is homogeneous of the predicted weight",
              sorted(bundle.detH.weighted_degrees()), [expected_detH_degree(sg)])
    rep.extend(coefficient_spot_checks(fam, bundle))


def expansion_checks(fam: CurveFamily, rep: VerificationReport, order: int):
    sg = fam.sg
    chart = coordinate_chart(fam, order)
    for i, r in enumerate(curve_residuals(fam, chart.xs), start=2):
        rep.exact(f"chart_solves_F{i}", f"F_{i}(x(z)) = O(z^prec)", r.is_zero(), True)
    for i, w in enumerate(sg.gaps, start=1):
        lead = expand_differential(fam, i, order, chart).leading()
        rep.exact(f"du{i}_leading_term", f"du_{i} = z^(w_{i}-1)(1 + O(z)) dz",
                  f"z^{lead[0]}*{lead[1]}", f"z^{w - 1}*1",
                  passed=(lead[0] == w - 1 and lead[1] == 1))
    return chart


def run_symbolic_suite(fam: CurveFamily, order: int = 12, checks=SYMBOLIC_CHECKS,
                       seed: int = 0, timings: bool = False) -> VerificationReport:
    unknown = set(checks) - set(SYMBOLIC_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(sorted(unknown))}")
    rep = VerificationReport()
    bundle = None
    chart = None
    for name in SYMBOLIC_CHECKS:
        if name not in checks:
            continue
        start = time.perf_counter()
        before = len(rep)
        if name == "semigroup":
            semigroup_checks(fam, rep)
        elif name == "lemma":
            bundle = bundle or matrices(fam)
            lemma_checks(fam, rep, bundle)
        elif name == "secondkind":
            bundle = bundle or matrices(fam)
            basis = solve_symmetry(fam, bundle)
            rep.extend(verify_basis(basis))
            rep.extend(verify_recurrence(basis))
        elif name == "expansion":
            chart = expansion_checks(fam, rep, order)
        elif name == "mu":
            if fam.mode == "symbolic":
                # point rings and lambda rings do not mix; use a rational draw
                fam = build_family(fam.sg, random_lambdas(fam.sg, np.random.default_rng(seed)))
                chart = None
            chart = chart or coordinate_chart(fam, order)
            g = fam.sg.genus
            for k in range(1, g + 1):
                for i in range(1, k + 1):
                    rep.extend(verify_mu_expansion(fam, k, i, order, chart))
        if timings:
            elapsed = time.perf_counter() - start
            for r in rep.results[before:]:
                r.runtime = elapsed
    return rep
