import itertools
from math import gcd
from functools import reduce

import pytest
from hypothesis import given, strategies as st

from telescurve.errors import NotCoprime, NotTelescopic, OutOfRange, TooSmall
from telescurve.semigroup import (
    count_nk,
    monomial_basis,
    partition_transpose,
    sieve_gaps,
    sieve_genus,
    unique_representation,
    validate_telescopic,
    young_diagram,
)


def all_telescopic(max_m=3, max_a=12):
    out = []
    for m in range(2, max_m + 1):
        for seq in itertools.product(range(2, max_a + 1), repeat=m):
            if reduce(gcd, seq) != 1:
                continue
            try:
                out.append(validate_telescopic(seq))
            except NotTelescopic:
                pass
    return out


TELESCOPIC = all_telescopic()


def test_465_invariants():
    sg = validate_telescopic([4, 6, 5])
    assert sg.genus == 4
    assert sg.gaps == (1, 2, 3, 7)
    assert sg.partition == (4, 1, 1, 1)
    assert sg.d == (4, 2, 1)
    assert sg.c[1:] == (2, 2)


def test_467_invariants():
    sg = validate_telescopic([4, 6, 7])
    assert sg.genus == 5
    assert sg.gaps == (1, 2, 3, 5, 9)
    assert sg.partition == (5, 2, 1, 1, 1)


def test_345_rejected_with_witness():
    with pytest.raises(NotTelescopic) as info:
        validate_telescopic([3, 4, 5])
    assert info.value.index == 3
    assert "i=3" in str(info.value)


def test_23_genus_one():
    sg = validate_telescopic([2, 3])
    assert sg.genus == 1 and sg.gaps == (1,)


@pytest.mark.parametrize("seq,err", [([4, 6], NotCoprime), ([1, 3], TooSmall), ([5], TooSmall),
                                     ([4, 5, 6], NotTelescopic)])
def test_rejections(seq, err):
    with pytest.raises(err):
        validate_telescopic(seq)


def test_unique_representation_examples():
    sg = validate_telescopic([4, 6, 5])
    assert unique_representation(0, sg) == (0, 0, 0)
    assert unique_representation(12, sg) == (3, 0, 0)
    assert unique_representation(7, sg) is None


def test_monomial_basis_examples():
    sg = validate_telescopic([4, 6, 5])
    mons = monomial_basis(sg, 5)
    assert [e for e, _ in mons] == [(0, 0, 0), (1, 0, 0), (0, 0, 1), (0, 1, 0), (2, 0, 0)]
    assert [n for _, n in mons] == [0, 4, 5, 6, 8]
    sg = validate_telescopic([2, 3])
    assert monomial_basis(sg, 3) == [((0, 0), 0), ((1, 0), 2), ((0, 1), 3)]
    assert monomial_basis(sg, 1) == [((0, 0), 0)]


def test_count_nk():
    sg = validate_telescopic([4, 6, 5])
    assert count_nk(sg, 3) == 1
    assert count_nk(sg, 1) == 1
    with pytest.raises(OutOfRange):
        count_nk(sg, 4)
    with pytest.raises(OutOfRange):
        count_nk(sg, 0)


def test_young_diagram_text():
    assert young_diagram((2, 1)) == "[][]\n[]"


def test_unsorted_minimum_index():
    sg = validate_telescopic([4, 6, 5])
    assert sg.a_min == 4 and sg.i0 == 1


@pytest.mark.parametrize("sg", TELESCOPIC, ids=lambda s: ",".join(map(str, s.a)))
def test_formula_genus_matches_sieve(sg):
    assert sg.genus == sieve_genus(sg.a)
    assert sg.gaps == sieve_gaps(sg.a)


def test_exhaustive_family_is_nontrivial():
    # m = 2 alone contributes every coprime pair; m = 3 must add more
    assert len(TELESCOPIC) > 60
    assert any(sg.m == 3 for sg in TELESCOPIC)


@given(st.sampled_from(TELESCOPIC))
def test_structural_invariants(sg):
    g = sg.genus
    if g:
        assert sg.gaps[0] == 1 and sg.gaps[-1] == 2 * g - 1
    assert sg.d[-1] == 1
    assert all(sg.d[i - 1] % sg.d[i] == 0 for i in range(1, sg.m))
    assert tuple(partition_transpose(sg.partition)) == sg.partition
    for i, row in sg.ell.items():
        assert sg.weight(row) == sg.a[i - 1] * sg.c[i - 1]
        assert sg.in_box(row)
        assert all(row[j] == 0 for j in range(i - 1, sg.m))


@given(st.sampled_from(TELESCOPIC))
def test_pole_orders_are_the_nongaps(sg):
    bound = 4 * sg.genus + 6
    nongaps = [n for n in range(bound) if n not in sg.gaps]
    mons = monomial_basis(sg, len(nongaps))
    assert [n for _, n in mons] == nongaps
    for e, n in mons:
        assert sg.weight(e) == n and sg.in_box(e)


@given(st.sampled_from(TELESCOPIC), st.integers(0, 60))
def test_representation_contract(sg, n):
    rep = unique_representation(n, sg)
    if n in sg.gaps:
        assert rep is None
    else:
        assert rep is not None and sg.weight(rep) == n and sg.in_box(rep)


@given(st.sampled_from([s for s in TELESCOPIC if s.genus >= 2]))
def test_count_nk_last_is_one(sg):
    assert count_nk(sg, sg.genus - 1) == 1
