from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from telescurve.curve import build_family, matrices
from telescurve.errors import InexactDivision, MixedUniverse, NonSquare
from telescurve.polycore import (
    Polynomial,
    Ring,
    coefficient_of,
    cofactor_det,
    determinant,
    homogeneous_check,
    poly_arith,
    rational_nullspace,
    rational_solve,
)

R = Ring(["x1", "x2", "x3", "y1", "y2", "y3"], [4, 6, 5, 4, 6, 5])
x1, x2, x3, y1, y2, y3 = R.gens()


def small_poly():
    exps = st.tuples(*[st.integers(0, 2)] * 6)
    coeffs = st.fractions(min_value=-3, max_value=3, max_denominator=3)
    return st.dictionaries(exps, coeffs, max_size=4).map(lambda d: Polynomial(R, d))


def to_sympy(p):
    syms = sympy.symbols(R.names)
    total = sympy.Integer(0)
    for e, c in p.terms.items():
        c = Fraction(c)
        total += sympy.Rational(c.numerator, c.denominator) * sympy.prod(
            [s ** k for s, k in zip(syms, e)])
    return sympy.expand(total)


def test_identity_and_exact_division():
    p = x1 * x2 + 3
    assert p * 1 == p
    q = (x2 - y2) * (x2 + y2)
    assert q.exact_div(x2 - y2) == x2 + y2
    assert poly_arith("exact_div", q, x2 - y2) == x2 + y2
    with pytest.raises(InexactDivision):
        (x2 * x2 + 1).exact_div(x2 - y2)


def test_weighted_degree():
    assert homogeneous_check(x2 ** 2) == 12


def test_mixed_universe():
    other = Ring(["x1"])
    with pytest.raises(MixedUniverse):
        x1 + other.gen("x1")


def test_determinant_examples():
    one, zero = R.one(), R.zero()
    assert determinant([[one, zero], [zero, one]]) == 1
    assert determinant([[zero, x1], [x2, zero]]) == -(x1 * x2)
    row = [x1, x2, x3]
    assert determinant([row, row, [y1, y2, y3]]) == 0
    with pytest.raises(NonSquare):
        determinant([[x1, x2]])


def test_coefficient_of_examples():
    assert coefficient_of(R.const(5), {}) == 5
    assert coefficient_of(x1 + 2 * x2, {"x2": 1}) == 2


def test_coefficient_of_detG1_465():
    fam = build_family([4, 6, 5], "symbolic")
    b = matrices(fam)
    c = coefficient_of(b.detGk[0], {"y1": 0, "y2": 1, "y3": 1})
    assert c == 4


def test_homogeneous_check_examples():
    assert homogeneous_check(R.one()) == 0
    res = homogeneous_check(x1 + x2)
    assert res[0] == "not-homogeneous"
    fam = build_family([4, 6, 5], "symbolic")
    assert homogeneous_check(matrices(fam).detH) == 11


@given(small_poly(), small_poly(), small_poly())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == 0
    assert p * q == q * p


@given(small_poly(), small_poly())
def test_product_matches_sympy(p, q):
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0


@given(small_poly(), small_poly())
def test_exact_division_roundtrip(p, q):
    if q.is_zero():
        return
    assert (p * q).exact_div(q) == p


@given(st.lists(small_poly(), min_size=9, max_size=9))
def test_determinant_matches_cofactor_3x3(entries):
    m = [entries[0:3], entries[3:6], entries[6:9]]
    assert determinant(m) == cofactor_det(m)


@given(st.lists(st.integers(-3, 3), min_size=16, max_size=16))
def test_determinant_matches_sympy_4x4(vals):
    m = [[v * x1 + 1 for v in vals[r * 4:(r + 1) * 4]] for r in range(4)]
    sm = sympy.Matrix(4, 4, lambda i, j: vals[i * 4 + j] * sympy.Symbol("x1") + 1)
    assert sympy.expand(to_sympy(determinant(m)) - sm.det()) == 0


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_grading_is_multiplicative(a, b, c, d):
    p = x1 ** a * y2 ** b + x2 ** 0 * 0
    q = x3 ** c * y1 ** d
    dp, dq = homogeneous_check(p), homogeneous_check(q)
    assert homogeneous_check(p * q) == dp + dq


def test_rational_solve_and_nullspace():
    cols = [{"a": 1, "b": 1}, {"a": 1, "b": -1}, {"a": 2, "b": 0}]
    sol, rank = rational_solve(cols, {"a": 3, "b": 1})
    assert rank == 2
    assert sum(s * c.get("a", 0) for s, c in zip(sol, cols)) == 3
    assert sum(s * c.get("b", 0) for s, c in zip(sol, cols)) == 1
    null = rational_nullspace(cols)
    assert len(null) == 1
    for key in "ab":
        assert sum(v * c.get(key, 0) for v, c in zip(null[0], cols)) == 0
    assert rational_solve([{"a": 1}, {"a": 2}], {"b": 1})[0] is None


def test_evaluate_exact_and_float():
    p = x1 ** 2 - Fraction(1, 2) * x2
    vals = [Fraction(3), Fraction(1), 0, 0, 0, 0]
    assert p.evaluate(vals) == Fraction(17, 2)
    assert p.evaluate([3.0, 1.0, 0, 0, 0, 0]) == pytest.approx(8.5)
