"""Reference numpy kernel for truncated theta sums."""

import numpy as np


def theta_sum(v, tau, w):
    """Sum of ``exp(pi i v.tau.v + 2 pi i v.w)`` over the rows ``v`` of a
    real (K, g) array, with first and second ``w``-derivatives."""
    v = np.ascontiguousarray(v, dtype=float)
    tau = np.asarray(tau, dtype=complex)
    w = np.asarray(w, dtype=complex)
    quad = np.einsum("ka,ab,kb->k", v, tau, v)
    terms = np.exp(1j * np.pi * quad + 2j * np.pi * (v @ w))
    two_pi_i = 2j * np.pi
    val = terms.sum()
    grad = two_pi_i * (terms @ v)
    hess = two_pi_i ** 2 * np.einsum("k,ka,kb->ab", terms, v, v)
    return val, grad, hess
