"""Period matrices of real-branch hyperelliptic curves.

With branch points ``e_1 < ... < e_{2g+1}`` the cycle ``alpha_j`` encircles
``[e_{2j-1}, e_{2j}]`` and ``beta_j`` runs from that cut to ``e_{2g+1}``.
Loop integrals are twice the boundary-value integrals over the intervals
``J_k = int_{e_k}^{e_{k+1}} h(x)/y_+(x) dx`` where ``y_+`` is the limit of
``sqrt(f)`` from the upper half plane.  The substitution
``x = e_k + (e_{k+1}-e_k)(1 - cos t)/2`` removes both endpoint singularities.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from ..errors import IntegrationFailure
from ..secondkind import SecondKindBasis, solve_symmetry
from .model import NumericCurve


@dataclass
class PeriodMatrices:
    """``om1 = omega_1``, ``om2 = omega_2`` (half periods of ``du``) and
    ``et1 = eta_1``, ``et2 = eta_2`` (so that ``-2 eta`` are the periods of
    ``dr``); ``tau = omega_1^{-1} omega_2``."""

    om1: np.ndarray
    om2: np.ndarray
    et1: np.ndarray
    et2: np.ndarray
    tau: np.ndarray
    delta_p: np.ndarray = field(default_factory=lambda: np.zeros(0))
    delta_pp: np.ndarray = field(default_factory=lambda: np.zeros(0))
    sequence: list = field(default_factory=list)
    lambdas: dict = field(default_factory=dict)

    @property
    def genus(self) -> int:
        return self.tau.shape[0]

    def with_characteristic(self, dp, dpp) -> "PeriodMatrices":
        return PeriodMatrices(self.om1, self.om2, self.et1, self.et2, self.tau,
                              np.asarray(dp, float), np.asarray(dpp, float),
                              self.sequence, self.lambdas)

    def lattice_vector(self, m1, m2):
        return 2 * self.om1 @ np.asarray(m1, float) + 2 * self.om2 @ np.asarray(m2, float)

    def to_json(self) -> str:
        def mat(a):
            return [[[float(v.real), float(v.imag)] for v in row] for row in np.atleast_2d(a)]
        return json.dumps({
            "sequence": list(self.sequence),
            "lambda": self.lambdas,
            "om1": mat(self.om1), "om2": mat(self.om2),
            "et1": mat(self.et1), "et2": mat(self.et2),
            "tau": mat(self.tau),
            "delta_p": [float(v) for v in self.delta_p],
            "delta_pp": [float(v) for v in self.delta_pp],
        })

    @classmethod
    def from_json(cls, text: str) -> "PeriodMatrices":
        d = json.loads(text)

        def mat(rows):
            return np.array([[complex(re, im) for re, im in row] for row in rows])
        return cls(mat(d["om1"]), mat(d["om2"]), mat(d["et1"]), mat(d["et2"]), mat(d["tau"]),
                   np.array(d["delta_p"], float), np.array(d["delta_pp"], float),
                   d.get("sequence", []), d.get("lambda", {}))


def _legendre(n):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * np.pi * (x + 1), 0.5 * np.pi * w


def interval_integrals(nc: NumericCurve, polys, nodes: int = 96):
    """``J[k, p]`` for interval ``k`` and integrand ``polys[p](x)/y_+``.

    ``polys`` are ascending coefficient arrays in ``x``.
    """
    e = nc.roots
    nroots = len(e)
    out = np.zeros((nroots - 1, len(polys)), dtype=complex)
    for k in range(nroots - 1):
        a, b = e[k], e[k + 1]
        phase = 1j ** (nroots - k - 1)
        vals = []
        for n in (nodes, 2 * nodes):
            t, w = _legendre(n)
            x = a + (b - a) * (1 - np.cos(t)) / 2
            others = np.ones_like(x)
            for r in range(nroots):
                if r not in (k, k + 1):
                    others = others * np.sqrt(np.abs(x - e[r]))
            vals.append(np.array([(np.polynomial.polynomial.polyval(x, p) / others) @ w
                                  for p in polys]) / phase)
        err = np.abs(vals[1] - vals[0]).max()
        if err > 1e-11 * max(1.0, np.abs(vals[1]).max()):
            raise IntegrationFailure(f"interval [{a}, {b}] did not converge (diff {err:.2e})")
        out[k] = vals[1]
    return out


def differential_polys(nc: NumericCurve, basis: SecondKindBasis):
    """Numerators (over ``2y``) of ``du_1..du_g`` and ``dr_1..dr_g`` as
    ascending coefficient arrays in ``x``; terms carrying ``x2`` integrate to
    zero over closed cycles and are dropped."""
    g = nc.genus
    sg = nc.sg
    s = sg.a[1]
    du = []
    for i in range(1, g + 1):
        p = np.zeros(s + 1, dtype=complex)
        p[g - i] = -1.0
        du.append(p)
    vals = nc.ring_values()
    dr = []
    for i in range(1, g + 1):
        p = np.zeros(4 * g + 2, dtype=complex)
        for n, c in basis.dr(i).items():
            e = sg.phi(n)
            if e[1]:
                continue
            p[e[0]] += complex(c.evaluate(vals))
        dr.append(p)
    # detG1 = 2 x2 for these curves: fold the 1/2 into the numerators
    return [p / 2 for p in du], [p / 2 for p in dr]


def compute_periods(nc: NumericCurve, basis: SecondKindBasis | None = None) -> PeriodMatrices:
    basis = basis or solve_symmetry(nc.family)
    g = nc.genus
    du, dr = differential_polys(nc, basis)
    J = interval_integrals(nc, du + dr)
    A = np.zeros((2 * g, g), dtype=complex)  # rows: differentials, cols: alpha cycles
    B = np.zeros((2 * g, g), dtype=complex)
    for j in range(g):
        A[:, j] = 2 * J[2 * j]
        B[:, j] = 2 * J[2 * j + 1::2].sum(axis=0)
    for sa in itertools.product((1, -1), repeat=g):
        for sb in itertools.product((1, -1), repeat=g):
            a = A * np.array(sa)
            b = B * np.array(sb)
            om1, om2 = a[:g] / 2, b[:g] / 2
            tau = np.linalg.solve(om1, om2)
            if np.abs(tau - tau.T).max() > 1e-9 * np.abs(tau).max():
                continue
            if np.linalg.eigvalsh((tau.imag + tau.imag.T) / 2).min() <= 0:
                continue
            et1, et2 = -a[g:] / 2, -b[g:] / 2
            return PeriodMatrices(om1, om2, et1, et2, (tau + tau.T) / 2,
                                  sequence=nc.sequence, lambdas=nc.lambda_json())
    raise IntegrationFailure("no orientation of the cycles gives a Riemann matrix")
