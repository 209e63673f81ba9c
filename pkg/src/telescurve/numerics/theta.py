"""Riemann theta with half-integer characteristics and its z-derivatives."""

from __future__ import annotations

import itertools
import math

import numpy as np

from ..errors import TruncationOverflow

try:
    from ._theta_kernel import theta_sum
    CYTHON_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised when the extension is absent
    from ._theta_py import theta_sum
    CYTHON_AVAILABLE = False

from ._theta_py import theta_sum as theta_sum_py

__all__ = ["CYTHON_AVAILABLE", "theta", "theta_sum", "theta_sum_py", "theta_value"]

MAX_POINTS = 2_000_000


def truncation_radius(eps: float) -> float:
    """Ellipsoid radius (in the ``sqrt(Im tau)`` metric) whose tail, including
    the quadratic weights of second derivatives, is far below ``eps``."""
    return math.sqrt(max(-math.log(eps), 1.0) / math.pi) + 1.5


def lattice_points(tau, w, delta_p, eps: float):
    """Rows ``n + delta'`` inside the ellipsoid centred on the dominant term."""
    tau = np.asarray(tau, dtype=complex)
    g = tau.shape[0]
    Y = tau.imag
    Yinv = np.linalg.inv(Y)
    T = np.linalg.cholesky(Y).T  # Y = T^t T
    c = -Yinv @ np.asarray(w, dtype=complex).imag - np.asarray(delta_p, dtype=float)
    R = truncation_radius(eps)
    half = R * np.sqrt(np.diag(Yinv))
    ranges = [range(math.floor(c[a] - half[a]), math.ceil(c[a] + half[a]) + 1) for a in range(g)]
    total = math.prod(len(r) for r in ranges)
    if total > MAX_POINTS:
        raise TruncationOverflow(f"{total} lattice points needed for eps={eps}")
    n = np.array(list(itertools.product(*ranges)), dtype=float).reshape(-1, g)
    d = (n - c) @ T.T
    keep = np.einsum("ka,ka->k", d, d) <= R * R
    return n[keep] + np.asarray(delta_p, dtype=float)


def theta(z, tau, delta_p=None, delta_pp=None, eps: float = 1e-15, kernel=None):
    """``theta[delta](z, tau)`` with gradient and Hessian in ``z``."""
    tau = np.atleast_2d(np.asarray(tau, dtype=complex))
    g = tau.shape[0]
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    dp = np.zeros(g) if delta_p is None else np.asarray(delta_p, dtype=float)
    dpp = np.zeros(g) if delta_pp is None else np.asarray(delta_pp, dtype=float)
    w = z + dpp
    v = lattice_points(tau, w, dp, eps)
    return (kernel or theta_sum)(v, tau, w)


def theta_value(z, tau, delta_p=None, delta_pp=None, eps: float = 1e-15):
    return theta(z, tau, delta_p, delta_pp, eps)[0]
