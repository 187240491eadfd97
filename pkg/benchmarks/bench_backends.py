"""Benchmark the numba kernels against the pure-numpy/Python fallbacks.

Run with:  python3 benchmarks/bench_backends.py [--slots N] [--repeats K]
"""

import argparse
import time

import numpy as np

from agejam import _kernels_numpy

try:
    from agejam import _kernels_numba
except ImportError:
    _kernels_numba = None


def timeit(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--slots", type=int, default=1_000_000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    us = [rng.random(args.slots) for _ in range(4)]
    # Scenario-1 AoII increment probabilities, threshold policy n = 2.
    agg_args = (0.125, 0.375, 0.1875, 0.5625, 0, 2.0, us[0], us[1])
    full_args = (True, 0.5, 0.5, 0.25, 0, 2.0, *us)
    rvi_args = (0.125, 0.375, 0.1875, 0.5625, 2.0, 2000, 1e-10, 100_000)

    cases = [
        ("run_aggregate", agg_args),
        ("run_full", full_args),
        ("rvi_iterate", rvi_args),
    ]
    backends = [("numpy", _kernels_numpy)]
    if _kernels_numba is not None:
        backends.append(("numba", _kernels_numba))
        for name, case_args in cases:  # warm-up compilation
            getattr(_kernels_numba, name)(*case_args)
    else:
        print("numba unavailable; benchmarking the fallback only")

    print(f"{'kernel':<16}{'backend':<10}{'best of ' + str(args.repeats):>14}")
    results = {}
    for name, case_args in cases:
        for backend_name, mod in backends:
            t = timeit(lambda: getattr(mod, name)(*case_args), args.repeats)
            results[(name, backend_name)] = t
            print(f"{name:<16}{backend_name:<10}{t * 1e3:>11.2f} ms")
        if len(backends) == 2:
            speedup = results[(name, 'numpy')] / results[(name, 'numba')]
            print(f"{'':<16}{'speedup':<10}{speedup:>11.1f} x")


if __name__ == "__main__":
    main()
