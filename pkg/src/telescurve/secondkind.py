"""Fundamental differential of the second kind by exact linear algebra.

The candidate two-form is

    omega(P, Q) = F(P, Q) / ((x1 - y1)^2 det G_1(P) det G_1(Q)) dx1 dy1,

with ``F = Omega-numerator + (x1 - y1)^2 * sum c[I;J] x^I y^J`` where ``I``
runs over the holomorphic monomials ``phi_1..phi_g``.  The coupling table
``c`` is found by requiring ``F`` to be symmetric in P and Q modulo the curve
equations.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .curve import CurveFamily, MatrixBundle, detG1_at_x, matrices
from .errors import NoSolution
from .polycore import Polynomial, rational_nullspace, rational_solve
from .report import VerificationReport


@dataclass
class SecondKindBasis:
    fam: CurveFamily
    bundle: MatrixBundle
    cmatrix: dict  # (n, n') phi indices -> Polynomial (lambda only)
    kernel: Polynomial  # symmetric numerator F(P, Q), reduced
    omega_numerator: Polynomial
    numerator_bound: int  # largest phi index appearing in any dr_i
    kernel_dim: int  # dimension of the homogeneous solution space
    freedom: list = field(default_factory=list)  # homogeneous solutions {(n, n'): t}
    stats: dict = field(default_factory=dict)

    @property
    def genus(self):
        return self.fam.sg.genus

    def entry(self, n: int, n2: int) -> Polynomial:
        return self.cmatrix.get((n, n2), self.fam.ring.zero())

    def entry_by_exps(self, I, J) -> Polynomial:
        sg = self.fam.sg
        if any(v < 0 for v in I) or any(v < 0 for v in J):
            return self.fam.ring.zero()
        try:
            return self.entry(sg.phi_index(I), sg.phi_index(J))
        except ValueError:
            return self.fam.ring.zero()

    def dr(self, i: int) -> dict:
        """Numerator table ``{n: coefficient}`` of
        ``dr_i = sum_n coeff * phi_n / det G_1 dy_1``."""
        g = self.genus
        row = g + 1 - i
        return {n2: -c for (n, n2), c in sorted(self.cmatrix.items()) if n == row and not c.is_zero()}

    def dr_numerator(self, i: int) -> Polynomial:
        fam = self.fam
        out = fam.ring.zero()
        for n2, c in self.dr(i).items():
            out = out + c * fam.mono(fam.sg.phi(n2), "y")
        return out

    def coupling_polynomial(self) -> Polynomial:
        fam = self.fam
        out = fam.ring.zero()
        for (n, n2), c in self.cmatrix.items():
            out = out + c * fam.mono(fam.sg.phi(n)) * fam.mono(fam.sg.phi(n2), "y")
        return out


def omega_raw_numerator(fam: CurveFamily, bundle: MatrixBundle) -> Polynomial:
    """Numerator of ``d_Q Omega`` over ``(x1-y1)^2 det G_1(P) det G_1(Q)``."""
    x1, y1 = fam.x(1), fam.y(1)
    detH = bundle.detH
    out = bundle.detGk[0] * detH
    for i in range(1, fam.m + 1):
        d = detH.diff(f"y{i}")
        if d.is_zero():
            continue
        term = (x1 - y1) * d * bundle.detGk[i - 1]
        out = out + term if i % 2 == 1 else out - term
    return out


def _split_lambda(fam: CurveFamily, p: Polynomial):
    """Group terms by their lambda monomial: ``{lam_exp: {xy_exp: coeff}}``."""
    nxy = 2 * fam.m
    out = {}
    for e, c in p.terms.items():
        out.setdefault(e[nxy:], {})[e[:nxy]] = c
    return out


def solve_symmetry(fam: CurveFamily, bundle: MatrixBundle | None = None) -> SecondKindBasis:
    t0 = time.perf_counter()
    bundle = bundle or matrices(fam)
    sg = fam.sg
    g = sg.genus
    ring = fam.ring
    nxy = 2 * fam.m
    top = 4 * g - 2

    raw = omega_raw_numerator(fam, bundle)
    reduced = fam.normal_form(raw)
    anti = reduced - fam.swap(reduced)

    # unknowns c[I;J]: I holomorphic, weight budget from homogeneity
    count = 1
    while sg.pole_order(count) <= top:
        count += 1
    basis = sg.monomials(count)
    pairs = []
    for n in range(1, g + 1):
        for n2, (_, order) in enumerate(basis, start=1):
            if sg.pole_order(n) + order <= top:
                pairs.append((n, n2))
    x1, y1 = fam.x(1), fam.y(1)
    sq = (x1 - y1) ** 2
    columns = []
    for n, n2 in pairs:
        b = sq * fam.mono(sg.phi(n)) * fam.mono(sg.phi(n2), "y")
        a = b - fam.swap(b)
        columns.append({e[:nxy]: c for e, c in a.terms.items()})
    pair_weight = [top - sg.pole_order(n) - sg.pole_order(n2) for n, n2 in pairs]

    blocks = _split_lambda(fam, anti)
    lam_weights = ring.weights[nxy:]
    cm = {}
    symbolic = fam.mode == "symbolic"
    for lam_e, part in sorted(blocks.items()):
        w = sum(a * b for a, b in zip(lam_weights, lam_e))
        idx = [j for j in range(len(pairs)) if not symbolic or pair_weight[j] == w]
        rhs = {k: -v for k, v in part.items()}
        sol, _ = rational_solve([columns[j] for j in idx], rhs)
        if sol is None:
            raise NoSolution(f"symmetry system inconsistent at lambda monomial {lam_e}")
        for j, t in zip(idx, sol):
            if t:
                mono = Polynomial(ring, {(0,) * nxy + lam_e: t})
                cm[pairs[j]] = cm.get(pairs[j], ring.zero()) + mono

    freedom = [{pairs[j]: t for j, t in enumerate(v) if t} for v in rational_nullspace(columns)]

    # Normalise: zero the holomorphic block on and below the diagonal using
    # symmetric corrections, which do not change the antisymmetric part.
    for n in range(1, g + 1):
        for n2 in range(1, n + 1):
            c = cm.get((n, n2))
            if c is None or c.is_zero():
                continue
            cm[(n, n2)] = cm[(n, n2)] - c
            if n2 != n:
                cm[(n2, n)] = cm.get((n2, n), ring.zero()) - c
    cm = {k: v for k, v in cm.items() if not v.is_zero()}

    kern = reduced
    for (n, n2), c in cm.items():
        kern = kern + c * sq * fam.mono(sg.phi(n)) * fam.mono(sg.phi(n2), "y")
    bound = max((n2 for (_, n2) in cm), default=0)
    return SecondKindBasis(
        fam=fam, bundle=bundle, cmatrix=cm, kernel=kern, omega_numerator=reduced,
        numerator_bound=bound, kernel_dim=len(freedom), freedom=freedom,
        stats={"unknowns": len(pairs), "lambda_blocks": len(blocks),
               "seconds": time.perf_counter() - t0},
    )


def sample_solution(basis: SecondKindBasis, rng) -> dict:
    """A random member of the affine solution space of the symmetry system."""
    ring = basis.fam.ring
    out = dict(basis.cmatrix)
    for vec in basis.freedom:
        t = rng.randint(-9, 9)
        for key, v in vec.items():
            out[key] = out.get(key, ring.zero()) + ring.const(t * v)
    return out


def kernel_from_table(basis: SecondKindBasis, table: dict) -> Polynomial:
    fam = basis.fam
    sg = fam.sg
    sq = (fam.x(1) - fam.y(1)) ** 2
    out = basis.omega_numerator
    for (n, n2), c in table.items():
        out = out + c * sq * fam.mono(sg.phi(n)) * fam.mono(sg.phi(n2), "y")
    return out


def symmetric_residual(basis: SecondKindBasis) -> Polynomial:
    return basis.kernel - basis.fam.swap(basis.kernel)


def verify_recurrence(basis: SecondKindBasis) -> VerificationReport:
    """Linear recurrence of the coupling entries along the diagonal through
    ``(phi_g, phi_{g+1})``."""
    rep = VerificationReport()
    sg = basis.fam.sg
    g = sg.genus
    k = sg.phi(g)
    ell = sg.phi(g + 1)
    k1, l1 = k[0], ell[0]
    c1 = basis.entry_by_exps((1,) + k[1:], (k1 + l1 - 1,) + ell[1:])
    c0 = basis.entry_by_exps((0,) + k[1:], (k1 + l1,) + ell[1:])
    for i1 in range(0, k1 + 1):
        lhs = basis.entry_by_exps((i1,) + k[1:], (k1 + l1 - i1,) + ell[1:])
        rhs = c1 * i1 + c0 * (1 - i1)
        rep.exact(f"coupling_recurrence[i1={i1}]", "coupling recurrence", str(lhs), str(rhs),
                  passed=(lhs == rhs))
    return rep


def verify_basis(basis: SecondKindBasis) -> VerificationReport:
    """Symmetry, the unit top coupling and the closed form of ``dr_1``."""
    rep = VerificationReport()
    fam = basis.fam
    sg = fam.sg
    g = sg.genus
    res = symmetric_residual(basis)
    rep.exact("kernel_symmetry", "omega(P,Q) = omega(Q,P)", len(res.terms), 0, passed=res.is_zero())
    top = basis.entry(g, g + 1)
    rep.exact("top_coupling_is_one", "c[phi_g; phi_g+1] = 1", str(top), "1", passed=(top == 1))
    dr1 = basis.dr(1)
    rep.exact("dr1_closed_form", "dr_1 = -phi_{g+1}/det G_1 dy_1",
              {n: str(c) for n, c in dr1.items()}, {g + 1: "-1"},
              passed=(set(dr1) == {g + 1} and dr1[g + 1] == -1))
    rep.exact("solution_space_dimension", "freedom = symmetric holomorphic block",
              basis.kernel_dim, g * (g + 1) // 2)
    return rep


def kernel_at_x(basis: SecondKindBasis):
    """``det G_1(P)`` in the x variables (convenience for numerics)."""
    return detG1_at_x(basis.fam, basis.bundle)
