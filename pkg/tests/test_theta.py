import itertools
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from telescurve.errors import TruncationOverflow
from telescurve.numerics.theta import CYTHON_AVAILABLE, theta, theta_sum, theta_sum_py

TAU2 = np.array([[1.1j + 0.2, 0.3 + 0.25j], [0.3 + 0.25j, 0.8j - 0.1]])
CHARS2 = [(np.array(a), np.array(b))
          for a in itertools.product((0, .5), repeat=2) for b in itertools.product((0, .5), repeat=2)]


def brute(z, tau, dp, dpp, box=12):
    """Theta by a plain sum over a cube of lattice points."""
    g = tau.shape[0]
    z = np.asarray(z, complex)
    out = 0
    for n in itertools.product(range(-box, box + 1), repeat=g):
        v = np.array(n) + dp
        out += np.exp(1j * np.pi * v @ tau @ v + 2j * np.pi * v @ (z + dpp))
    return out


cplx = st.complex_numbers(max_magnitude=0.6, allow_nan=False, allow_infinity=False)


def test_odd_characteristic_vanishes_at_origin():
    th, grad, _ = theta([0], [[1j]], [0.5], [0.5])
    assert abs(th) < 1e-15
    assert abs(grad[0]) > 0.1


@pytest.mark.parametrize("c", range(16))
def test_against_brute_force(c):
    dp, dpp = CHARS2[c]
    z = np.array([0.13 - 0.2j, -0.31 + 0.07j])
    assert abs(theta(z, TAU2, dp, dpp)[0] - brute(z, TAU2, dp, dpp)) < 1e-12


@given(cplx, cplx, st.integers(0, 15))
def test_parity(z1, z2, c):
    dp, dpp = CHARS2[c]
    z = np.array([z1, z2])
    sign = (-1) ** round(4 * dp @ dpp)
    a = theta(z, TAU2, dp, dpp)[0]
    b = theta(-z, TAU2, dp, dpp)[0]
    assert abs(a - sign * b) < 1e-12 * max(1, abs(a))


@given(cplx, cplx, st.integers(0, 15), st.integers(0, 1))
def test_periodicity(z1, z2, c, j):
    dp, dpp = CHARS2[c]
    z = np.array([z1, z2])
    e = np.eye(2)[j]
    a = theta(z, TAU2, dp, dpp)[0]
    assert abs(theta(z + e, TAU2, dp, dpp)[0] - np.exp(2j * np.pi * dp[j]) * a) < 1e-11 * max(1, abs(a))
    factor = np.exp(-1j * np.pi * TAU2[j, j] - 2j * np.pi * z[j] - 2j * np.pi * dpp[j])
    shifted = theta(z + TAU2[:, j], TAU2, dp, dpp)[0]
    assert abs(shifted - factor * a) < 1e-10 * max(1, abs(a), abs(shifted))


@pytest.mark.skipif(not CYTHON_AVAILABLE, reason="compiled kernel not built")
@given(cplx, cplx, st.integers(0, 15))
def test_compiled_kernel_matches_numpy(z1, z2, c):
    dp, dpp = CHARS2[c]
    z = np.array([z1, z2])
    a = theta(z, TAU2, dp, dpp, kernel=theta_sum)
    b = theta(z, TAU2, dp, dpp, kernel=theta_sum_py)
    for x, y in zip(a, b):
        assert np.allclose(x, y, rtol=1e-13, atol=1e-14)


@given(cplx, cplx, st.integers(0, 15))
def test_derivatives_by_finite_differences(z1, z2, c):
    dp, dpp = CHARS2[c]
    z = np.array([z1, z2])
    _, grad, hess = theta(z, TAU2, dp, dpp)
    h = 1e-5
    for a in range(2):
        e = np.eye(2)[a] * h
        fd = (theta(z + e, TAU2, dp, dpp)[0] - theta(z - e, TAU2, dp, dpp)[0]) / (2 * h)
        assert abs(fd - grad[a]) < 1e-6 * max(1, abs(grad[a]))
        fd2 = (theta(z + e, TAU2, dp, dpp)[1] - theta(z - e, TAU2, dp, dpp)[1]) / (2 * h)
        assert np.allclose(fd2, hess[a], rtol=1e-6, atol=1e-6)


@given(cplx, cplx)
def test_truncation_stability(z1, z2):
    z = np.array([z1, z2])
    a = theta(z, TAU2, eps=1e-15)[0]
    b = theta(z, TAU2, eps=1e-10)[0]
    assert abs(a - b) < 1e-9 * max(1, abs(a))


def test_truncation_overflow():
    tiny = np.eye(3) * 1e-5j
    with pytest.raises(TruncationOverflow):
        theta(np.zeros(3), tiny)


def test_pure_python_fallback():
    code = (
        "import sys\n"
        "class Block:\n"
        "    def find_spec(self, name, path=None, target=None):\n"
        "        if name.endswith('_theta_kernel'):\n"
        "            raise ImportError(name)\n"
        "sys.meta_path.insert(0, Block())\n"
        "from telescurve.numerics.theta import CYTHON_AVAILABLE, theta\n"
        "assert not CYTHON_AVAILABLE\n"
        "print(abs(theta([0.1], [[1j]], [0.5], [0.5])[0]))\n"
    )
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True)
    want = abs(theta([0.1], [[1j]], [0.5], [0.5])[0])
    assert abs(float(out.stdout) - want) < 1e-14
