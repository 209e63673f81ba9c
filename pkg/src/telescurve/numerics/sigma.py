"""Sigma function, its derivatives and ``wp`` built on theta.

``sigma(u) = exp(u^t K u / 2) theta[delta](A u)`` with ``K = eta_1 omega_1^{-1}``
and ``A = (2 omega_1)^{-1}``; the constant factor is taken to be one.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..errors import AmbiguousCharacteristic, NoCharacteristicFound, OnThetaDivisor
from .periods import PeriodMatrices
from .theta import theta

DEGENERACY_FLOOR = 1e-13


class SigmaEvaluator:
    def __init__(self, pm: PeriodMatrices, eps: float = 1e-15):
        self.pm = pm
        self.eps = eps
        self.g = pm.genus
        self.K = pm.et1 @ np.linalg.inv(pm.om1)
        self.A = np.linalg.inv(2 * pm.om1)
        self.dp = pm.delta_p if len(pm.delta_p) else np.zeros(self.g)
        self.dpp = pm.delta_pp if len(pm.delta_pp) else np.zeros(self.g)
        # the theta value at a generic point sets the scale for vanishing tests
        self.scale = abs(self._theta(np.full(self.g, 0.1 + 0.05j))[0]) or 1.0

    def _theta(self, u, eps=None):
        return theta(self.A @ u, self.pm.tau, self.dp, self.dpp, eps or self.eps)

    def _parts(self, u, eps=None):
        """``(E, th, Ku, grad_u theta, hess_u theta)``."""
        u = np.atleast_1d(np.asarray(u, dtype=complex))
        th, gz, hz = self._theta(u, eps)
        Ku = self.K @ u
        E = np.exp(0.5 * u @ Ku)
        return E, th, Ku, self.A.T @ gz, self.A.T @ hz @ self.A

    def sigma(self, u, eps=None) -> complex:
        E, th, *_ = self._parts(u, eps)
        return complex(E * th)

    def sigma_d1(self, u) -> np.ndarray:
        E, th, Ku, gt, _ = self._parts(u)
        return E * (th * Ku + gt)

    def sigma_d2(self, u) -> np.ndarray:
        E, th, Ku, gt, ht = self._parts(u)
        return E * (th * (self.K + np.outer(Ku, Ku)) + np.outer(Ku, gt) + np.outer(gt, Ku) + ht)

    def all(self, u):
        """``(sigma, grad, hessian)`` sharing one theta evaluation."""
        E, th, Ku, gt, ht = self._parts(u)
        s = E * th
        d1 = E * (th * Ku + gt)
        d2 = E * (th * (self.K + np.outer(Ku, Ku)) + np.outer(Ku, gt) + np.outer(gt, Ku) + ht)
        return s, d1, d2

    def wp_matrix(self, u) -> np.ndarray:
        """``wp_{ij} = -d^2 log sigma``, computed with the exponential factored out."""
        _, th, _, gt, ht = self._parts(u)
        if abs(th) < DEGENERACY_FLOOR * self.scale:
            raise OnThetaDivisor(f"sigma vanishes at u={u}")
        out = -self.K - ht / th + np.outer(gt, gt) / th ** 2
        return (out + out.T) / 2

    def wp(self, i: int, j: int, u) -> complex:
        return complex(self.wp_matrix(u)[i - 1, j - 1])

    def sigma_ratio(self, i: int, j: int, u) -> complex:
        """``sigma_i / sigma_j`` (1-based); the exponential factor cancels."""
        d1 = self.sigma_d1(u)
        if abs(d1[j - 1]) == 0:
            raise OnThetaDivisor(f"sigma_{j} vanishes at u={u}")
        return complex(d1[i - 1] / d1[j - 1])

    def quasi_factor(self, u, m1, m2) -> complex:
        """Multiplier of ``sigma`` under ``u -> u + 2 om1 m1 + 2 om2 m2``."""
        pm = self.pm
        m1 = np.asarray(m1, float)
        m2 = np.asarray(m2, float)
        sign = (-1) ** round(2 * (self.dp @ m1 - self.dpp @ m2) + m1 @ m2)
        shift = pm.om1 @ m1 + pm.om2 @ m2
        eta = 2 * pm.et1 @ m1 + 2 * pm.et2 @ m2
        return sign * np.exp(eta @ (np.asarray(u, complex) + shift))


def characteristic_parity(dp, dpp) -> int:
    return round(4 * np.dot(dp, dpp)) % 2


def find_characteristic(pm: PeriodMatrices, amap, rng, weight: int, samples: int = 2,
                        rel_tol: float = 1e-6) -> PeriodMatrices:
    """Choose the half characteristic whose sigma has parity ``weight mod 2``
    and vanishes on Abel images of ``g - 1`` points."""
    g = pm.genus
    nc = amap.nc
    tests = []
    for _ in range(samples):
        pts = [nc.random_point(rng) for _ in range(g - 1)]
        tests.append(amap.sum(pts) if pts else np.zeros(g, dtype=complex))
    # a generic point measures the typical size of each candidate
    generic = np.array([complex(rng.normal(), rng.normal()) for _ in range(g)]) * 0.3
    passing = []
    for bits in itertools.product((0.0, 0.5), repeat=2 * g):
        dp, dpp = np.array(bits[:g]), np.array(bits[g:])
        if characteristic_parity(dp, dpp) != weight % 2:
            continue
        cand = pm.with_characteristic(dp, dpp)
        ev = SigmaEvaluator(cand)
        ref = max(abs(ev.sigma(generic)), abs(ev.sigma(2 * generic)))
        if ref == 0:
            continue
        if all(abs(ev.sigma(u)) < rel_tol * ref for u in tests):
            passing.append(cand)
    if not passing:
        raise NoCharacteristicFound("no half characteristic passes parity and vanishing screens")
    if len(passing) > 1:
        raise AmbiguousCharacteristic(f"{len(passing)} characteristics pass; enlarge the sample")
    return passing[0]
