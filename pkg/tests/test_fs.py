import itertools
import json
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, strategies as st

from telescurve.cli import mono_text
from telescurve.curve import build_family, random_lambdas
from telescurve.errors import DegenerateDivisor, OutOfRangeK
from telescurve.fs import (
    admissible_k,
    alpha,
    evaluate_entry,
    inversion_formula,
    mu,
    point_ring,
    psi,
    symbolic_points,
    vanishing_orders,
    verify_mu_expansion,
)
from telescurve.semigroup import validate_telescopic

GOLDEN = Path(__file__).parent / "golden"
SG465 = validate_telescopic([4, 6, 5])


def elementary(ring, names, j):
    out = ring.zero()
    for combo in itertools.combinations(names, j):
        t = ring.one()
        for n in combo:
            t = t * ring.gen(n)
        out = out + t
    return out


def test_psi_small_cases():
    sg = validate_telescopic([2, 3])
    assert psi(sg, 0, [(5, 7)]) == 1
    # rows (1, x1) for two points
    assert psi(sg, 1, [(2, 0), (5, 0)]) == 3
    assert psi(SG465, 2, [(1, 0, 2), (3, 0, 1), (2, 0, 5)]) == (
        np.linalg.det([[1, 1, 2], [1, 3, 1], [1, 2, 5]]).round())


def test_genus_two_mu_is_elementary_symmetric():
    sg = validate_telescopic([2, 5])
    ring = point_ring(sg, 2)
    pts = symbolic_points(2)
    xs = ["x1(P1)", "x1(P2)"]
    assert mu(sg, 2, 2, pts, ring).equals(elementary(ring, xs, 1))
    assert mu(sg, 2, 1, pts, ring).equals(elementary(ring, xs, 2))


@pytest.mark.parametrize("seq", [(2, 3), (2, 5), (2, 7)])
def test_hyperelliptic_mu_all_k(seq):
    sg = validate_telescopic(seq)
    g = sg.genus
    for k in range(1, g + 1):
        ring = point_ring(sg, k)
        xs = [f"x1(P{j})" for j in range(1, k + 1)]
        for i in range(1, k + 1):
            m = mu(sg, k, i, symbolic_points(k), ring)
            assert m.equals(elementary(ring, xs, k + 1 - i))


def test_mu_beyond_k_plus_one_is_zero():
    assert mu(SG465, 2, 5, symbolic_points(2)).numerator == 0
    assert mu(SG465, 0, 1, []).value() == 1


@st.composite
def points_465(draw, n):
    pts = []
    for _ in range(n):
        pts.append(tuple(Fraction(draw(st.integers(-6, 6)), draw(st.integers(1, 3)))
                         for _ in range(3)))
    return pts


@given(points_465(4), st.integers(0, 2), st.integers(0, 2))
def test_psi_antisymmetric_in_points(pts, a, b):
    swapped = list(pts)
    swapped[a], swapped[b] = swapped[b], swapped[a]
    want = psi(SG465, 3, pts) * (-1 if a != b else 1)
    assert psi(SG465, 3, swapped) == want


@given(points_465(3), st.integers(1, 3))
def test_mu_symmetric_in_points(pts, i):
    try:
        base = mu(SG465, 3, i, pts).value()
    except DegenerateDivisor:
        return
    for perm in itertools.permutations(pts):
        assert mu(SG465, 3, i, list(perm)).value() == base


@given(points_465(3), st.integers(0, 2))
def test_psi_vanishes_on_repeated_points(pts, j):
    pts = pts + [pts[j]]
    assert psi(SG465, 3, pts) == 0


def test_degenerate_divisor():
    with pytest.raises(DegenerateDivisor):
        mu(SG465, 2, 1, [(1, 2, 3), (1, 5, 3)])


@pytest.mark.parametrize("seq", [(2, 5), (4, 6, 5)])
def test_mu_expansion(seq):
    sg = validate_telescopic(seq)
    fam = build_family(sg, random_lambdas(sg, np.random.default_rng(3)))
    for k in range(1, sg.genus + 1):
        for i in range(1, k + 1):
            rep = verify_mu_expansion(fam, k, i, 8)
            assert rep.passed, rep.summary()


def test_vanishing_orders():
    assert [alpha(SG465, k) for k in (1, 2, 3)] == [4, 1, 1]
    assert alpha(validate_telescopic([2, 5]), 1) == 2
    rows = vanishing_orders(SG465)
    assert {(r.k, r.i) for r in rows} == {(1, 4), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4)}
    with pytest.raises(OutOfRangeK):
        alpha(SG465, 4)


def test_admissible_range_and_errors():
    assert admissible_k(SG465) == (1, 4)
    assert admissible_k(validate_telescopic([3, 7])) == (3, 6)
    with pytest.raises(OutOfRangeK):
        inversion_formula(SG465, 5)
    with pytest.raises(OutOfRangeK):
        inversion_formula(validate_telescopic([3, 7]), 2)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("fmt,ext", [("text", "txt"), ("latex", "tex")])
def test_golden_renderings(k, fmt, ext):
    want = (GOLDEN / f"formulas_465_k{k}.{ext}").read_text()
    assert inversion_formula(SG465, k).render(fmt) == want


def test_displayed_formulas():
    shown = json.loads((GOLDEN / "displayed_465.json").read_text())
    assert [mono_text(SG465.phi(n)) for n in range(1, 6)] == shown["phi"]
    for row in shown["structural"]:
        entries = inversion_formula(SG465, row["k"]).to_dict()["entries"]
        match = [e for e in entries if e["lhs"] == row["lhs"]]
        assert len(match) == 1
        e = match[0]
        assert (e["sign"], e["numerator"], e["denominator"]) == (
            row["sign"], row["numerator"], row["denominator"])
    for key, fmt in (("expanded_text", "text"), ("expanded_latex", "latex")):
        for row in shown[key]:
            assert row["line"] in inversion_formula(SG465, row["k"]).render(fmt).splitlines()


def test_evaluate_entry_matches_mu():
    doc = inversion_formula(SG465, 2)
    pts = [(1, 2, 3), (2, 7, 4)]
    for e in doc.entries:
        assert evaluate_entry(SG465, e, pts) == e.sign * mu(SG465, 2, e.mu_index, pts).value()
