import random

import numpy as np
import pytest

from telescurve.curve import build_family, matrices, random_lambdas
from telescurve.secondkind import (
    kernel_from_table,
    omega_raw_numerator,
    sample_solution,
    solve_symmetry,
    verify_basis,
    verify_recurrence,
)

SEQS = [(2, 3), (2, 5), (2, 7), (3, 4), (4, 6, 5)]


@pytest.fixture(scope="module")
def symbolic_bases():
    return {seq: solve_symmetry(build_family(seq, "symbolic")) for seq in SEQS}


@pytest.mark.parametrize("seq", SEQS)
def test_symbolic_basis_checks(symbolic_bases, seq):
    rep = verify_basis(symbolic_bases[seq])
    assert rep.passed, rep.summary()


@pytest.mark.parametrize("seq", SEQS)
def test_recurrence(symbolic_bases, seq):
    rep = verify_recurrence(symbolic_bases[seq])
    assert len(rep) >= 1 and rep.passed


@pytest.mark.parametrize("seq", [(2, 3), (2, 5), (2, 7), (4, 6, 5)])
@pytest.mark.parametrize("draw", range(3))
def test_rational_specialisations(seq, draw):
    fam = build_family(seq, "symbolic")
    fam = build_family(fam.sg, random_lambdas(fam.sg, np.random.default_rng(100 + draw)))
    basis = solve_symmetry(fam)
    rep = verify_basis(basis)
    assert rep.passed, rep.summary()


@pytest.mark.parametrize("seq", [(2, 5), (4, 6, 5)])
def test_any_solution_is_symmetric_with_unit_top(symbolic_bases, seq):
    basis = symbolic_bases[seq]
    g = basis.genus
    rng = random.Random(7)
    for _ in range(3):
        table = sample_solution(basis, rng)
        kern = kernel_from_table(basis, table)
        assert kern == basis.fam.swap(kern)
        assert table[(g, g + 1)] == 1


def test_dr1_closed_form(symbolic_bases):
    for seq, basis in symbolic_bases.items():
        g = basis.genus
        assert {n: str(c) for n, c in basis.dr(1).items()} == {g + 1: "-1"}


def test_dr2_genus_two():
    basis = solve_symmetry(build_family([2, 5], "symbolic"))
    got = {n: str(c) for n, c in basis.dr(2).items()}
    # phi_2 = x1, phi_3 = x1^2, phi_4 = x2, phi_5 = x1^3
    assert got == {
        2: "-l2_21*l2_11 - l2_30",
        3: "-l2_21^2 - 2*l2_40",
        4: "l2_21",
        5: "-3",
    }


def test_dr2_pure_hyperelliptic():
    fam = build_family([2, 5], {"2:(4,0)": 2, "2:(3,0)": -1, "2:(1,0)": 5})
    got = {n: str(c) for n, c in solve_symmetry(fam).dr(2).items()}
    assert got == {2: "1", 3: "-4", 5: "-3"}


def test_omega_raw_numerator_degrees():
    fam = build_family([2, 3], "zero")
    assert omega_raw_numerator(fam, matrices(fam)).weighted_degrees() == {6}
    fam = build_family([4, 6, 5], "symbolic")
    assert omega_raw_numerator(fam, matrices(fam)).weighted_degrees() == {22}


def test_freedom_is_symmetric_holomorphic_block(symbolic_bases):
    basis = symbolic_bases[(2, 5)]
    assert basis.kernel_dim == 3
    for vec in basis.freedom:
        for (n, n2), t in vec.items():
            assert n <= 2 and n2 <= 2
            assert vec.get((n2, n)) == t
