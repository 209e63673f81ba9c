"""Combinatorics of telescopic sequences.

A sequence ``(a_1, ..., a_m)`` generates the semigroup of pole orders at the
point at infinity.  Everything here is exact integer arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Sequence

from .errors import NotCoprime, NotTelescopic, OutOfRange, TooSmall

ExponentVector = tuple  # tuple[int, ...] of length m


def _in_monoid(target: int, gens: Sequence[int]) -> bool:
    reachable = [False] * (target + 1)
    reachable[0] = True
    for n in range(1, target + 1):
        reachable[n] = any(g <= n and reachable[n - g] for g in gens)
    return reachable[target]


def partition_transpose(part):
    part = [p for p in part if p > 0]
    if not part:
        return []
    return [sum(1 for p in part if p > j) for j in range(part[0])]


@dataclass(frozen=True)
class SemigroupData:
    """Invariants of a validated telescopic sequence.

    ``d[i]`` is ``gcd(a_1..a_{i+1})`` (0-based), ``c[i] = d[i-1]/d[i]`` bounds
    the exponent of ``x_{i+1}`` in the normal-form box (``c[0]`` is unused and
    set to 0).  ``ell[i]`` is the exponent row of the leading monomial of the
    equation for ``x_{i+1}``.
    """

    a: tuple
    d: tuple
    c: tuple
    ell: dict
    genus: int
    gaps: tuple
    partition: tuple
    a_min: int
    i0: int  # 1-based index of the first minimal generator
    _monomials: list = field(default_factory=list, repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.a)

    def weight(self, exps) -> int:
        return sum(ai * ei for ai, ei in zip(self.a, exps))

    def in_box(self, exps) -> bool:
        return all(0 <= exps[i] < self.c[i] for i in range(1, self.m)) and exps[0] >= 0

    def is_gap(self, n: int) -> bool:
        return n in self.gaps

    def representation(self, n: int):
        return unique_representation(n, self)

    def monomials(self, count: int):
        return monomial_basis(self, count)

    def pole_order(self, index: int) -> int:
        """``N(index)`` for the 1-based monomial index."""
        return monomial_basis(self, index)[index - 1][1]

    def phi(self, index: int):
        """Exponent vector of the 1-based monomial ``phi_index``."""
        return monomial_basis(self, index)[index - 1][0]

    def phi_index(self, exps) -> int:
        target = self.weight(exps)
        count = 1
        while True:
            basis = monomial_basis(self, count)
            if basis[-1][1] >= target:
                break
            count *= 2
        for n, (e, _) in enumerate(basis, start=1):
            if tuple(e) == tuple(exps):
                return n
        raise ValueError(f"{exps} is not a normal-form monomial")


def sieve_gaps(gens: Sequence[int], bound: int | None = None):
    """Gaps of the semigroup generated by ``gens`` (coprime), found by sieving
    up to ``bound`` (default: the Frobenius bound ``(min-1)(max-1)``)."""
    if bound is None:
        bound = (min(gens) - 1) * (max(gens) - 1)
    member = [False] * (bound + 1)
    member[0] = True
    for n in range(1, bound + 1):
        member[n] = any(v <= n and member[n - v] for v in gens)
    return tuple(n for n in range(bound + 1) if not member[n])


def sieve_genus(gens: Sequence[int]) -> int:
    return len(sieve_gaps(gens))


def validate_telescopic(seq: Sequence[int]) -> SemigroupData:
    a = tuple(int(v) for v in seq)
    if len(a) < 2:
        raise TooSmall(f"need at least two generators, got {len(a)}")
    if any(v < 2 for v in a):
        raise TooSmall(f"every generator must be >= 2, got {a}")
    if reduce(gcd, a) != 1:
        raise NotCoprime(f"gcd{a} = {reduce(gcd, a)} != 1")

    d = []
    for i in range(len(a)):
        d.append(reduce(gcd, a[: i + 1]))
    c = [0] + [d[i - 1] // d[i] for i in range(1, len(a))]
    for i in range(1, len(a)):
        gens = [a[j] // d[i - 1] for j in range(i)]
        if not _in_monoid(a[i] // d[i], gens):
            raise NotTelescopic(i + 1, f"a_{i + 1}/d_{i + 1} = {a[i] // d[i]} is not in "
                                       f"the monoid generated by {gens} (i={i + 1})")

    twice_g = 1 - a[0] + sum((c[i] - 1) * a[i] for i in range(1, len(a)))
    genus = twice_g // 2

    a_min = min(a)
    sg = SemigroupData(
        a=a, d=tuple(d), c=tuple(c), ell={}, genus=genus, gaps=(), partition=(),
        a_min=a_min, i0=a.index(a_min) + 1,
    )

    # the sieve is independent of the genus formula
    gaps = sieve_gaps(a, 2 * genus)
    if len(gaps) != genus or (gaps and gaps[-1] != 2 * genus - 1):
        raise AssertionError(f"genus formula {genus} disagrees with sieve {gaps}")

    ell = {}
    for i in range(1, len(a)):
        rep = unique_representation(a[i] * c[i], sg)
        assert rep is not None and all(rep[j] == 0 for j in range(i, len(a)))
        ell[i + 1] = rep

    part = tuple(w - k for w, k in zip(reversed(gaps), range(genus - 1, -1, -1)))
    object.__setattr__(sg, "gaps", gaps)
    object.__setattr__(sg, "ell", ell)
    object.__setattr__(sg, "partition", part)
    return sg


def unique_representation(n: int, sg: SemigroupData):
    """The unique box vector with weighted sum ``n``, or ``None`` for a gap."""
    if n < 0:
        return None
    found = None
    ranges = [range(sg.c[i]) for i in range(1, sg.m)]
    for tail in itertools.product(*ranges):
        rest = n - sum(sg.a[i + 1] * t for i, t in enumerate(tail))
        if rest >= 0 and rest % sg.a[0] == 0:
            cand = (rest // sg.a[0],) + tail
            if found is not None:
                raise AssertionError(f"two representations of {n}: {found}, {cand}")
            found = cand
    return found


def monomial_basis(sg: SemigroupData, count: int):
    """First ``count`` normal-form monomials with their pole orders."""
    cache = sg._monomials
    n = cache[-1][1] + 1 if cache else 0
    while len(cache) < count:
        rep = unique_representation(n, sg)
        if rep is not None:
            cache.append((rep, n))
        n += 1
    return cache[:count]


def count_nk(sg: SemigroupData, k: int) -> int:
    if not 1 <= k <= sg.genus - 1:
        raise OutOfRange(f"k={k} outside [1, {sg.genus - 1}]")
    bound = sg.genus - k - 1
    return sum(1 for n in range(bound + 1) if not sg.is_gap(n))


def young_diagram(part) -> str:
    return "\n".join("[]" * p for p in part)
