"""Compare the compiled integration kernels against the pure-Python fallback.

Runs the reduced two-variable system and the full network model with both
backends and prints a timing table plus the maximum discrepancy between the
two trajectories.

Usage:
    python benchmarks/bench_backends.py [--repeats N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from wmrecall import _kernels_py
from wmrecall.integrate import BLOWUP_LIMIT

try:
    from wmrecall import _kernels
except ImportError:
    _kernels = None


def bench_reduced(backend, repeats):
    dt, n_steps, stride = 0.01, 50_000, 10
    n_rec = n_steps // stride + 1
    out_d = np.empty(n_rec)
    out_e = np.empty(n_rec)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        status = backend.reduced_trajectory(
            0.1, 0.0, 5.0, 10.0, 2.0, dt, n_steps, stride,
            BLOWUP_LIMIT, out_d, out_e,
        )
        best = min(best, time.perf_counter() - t0)
    assert status == -1
    return best, np.stack([out_d, out_e])


def bench_network(backend, repeats):
    n, dt, n_steps, stride = 12, 0.005, 20_000, 20
    rng = np.random.default_rng(0)
    s0 = rng.uniform(-1.0, 1.0, size=(n, 2))
    a0 = np.zeros((n, 2))
    n_rec = n_steps // stride + 1
    out_s = np.empty((n_rec, n, 2))
    out_a = np.empty((n_rec, n, 2))
    scratch = np.empty((8, n, 2))
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        status = backend.network_trajectory(
            s0, a0, 1.8, 97.0, 54.0, dt, n_steps, stride,
            BLOWUP_LIMIT, out_s, out_a, scratch,
        )
        best = min(best, time.perf_counter() - t0)
    assert status == -1
    return best, np.concatenate([out_s.ravel(), out_a.ravel()])


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=3,
                        help="timing repeats per case (best is reported)")
    args = parser.parse_args()

    cases = [("reduced (50k steps)", bench_reduced),
             ("network (N=12, 20k steps)", bench_network)]

    print(f"{'case':<28}{'python':>12}{'cython':>12}{'speedup':>10}{'max |diff|':>14}")
    for name, fn in cases:
        t_py, ref = fn(_kernels_py, args.repeats)
        if _kernels is None:
            print(f"{name:<28}{t_py:>11.4f}s{'n/a':>12}{'n/a':>10}{'n/a':>14}")
            continue
        t_cy, got = fn(_kernels, args.repeats)
        diff = float(np.max(np.abs(ref - got)))
        print(f"{name:<28}{t_py:>11.4f}s{t_cy:>11.4f}s{t_py / t_cy:>9.1f}x{diff:>14.3e}")

    if _kernels is None:
        print("\ncompiled kernels unavailable; only the fallback was timed")


if __name__ == "__main__":
    main()
