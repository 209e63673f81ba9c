"""Time the compiled theta kernel against the numpy reference.

    python3 benchmarks/bench_theta.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from telescurve.numerics.theta import CYTHON_AVAILABLE, lattice_points, theta_sum, theta_sum_py

CASES = {
    "g1": np.array([[1j]]),
    "g2": np.array([[1.1j + 0.2, 0.3 + 0.25j], [0.3 + 0.25j, 0.8j - 0.1]]),
}


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--repeat", type=int, default=2000)
    args = p.parse_args()
    print(f"compiled kernel available: {CYTHON_AVAILABLE}")
    rng = np.random.default_rng(0)
    for name, tau in CASES.items():
        g = tau.shape[0]
        w = 0.3 * (rng.normal(size=g) + 1j * rng.normal(size=g))
        v = lattice_points(tau, w, np.full(g, 0.5), 1e-15)
        row = [f"{name}: {len(v)} lattice points"]
        for label, kern in (("numpy", theta_sum_py), ("compiled", theta_sum)):
            t = min(timeit.repeat(lambda: kern(v, tau, w), number=args.repeat, repeat=3))
            row.append(f"{label} {1e6 * t / args.repeat:.1f} us/call")
        print(", ".join(row))


if __name__ == "__main__":
    main()
