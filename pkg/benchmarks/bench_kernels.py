#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the Hermite-table recurrence and the polynomial-times-Gaussian
evaluator, the two inner loops behind every quadrature-based matrix in the
package, on both backends.  Run after `pip install -e .`:

    python benchmarks/bench_kernels.py --n-max 48 --nodes 20000
"""

import argparse
import time

import numpy as np

from cxho import _kernels


def time_call(func, *args, repeats=20):
    func(*args)  # warm-up (JIT compile on the numba path)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        func(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-max", type=int, default=48,
                        help="number of Hermite rows")
    parser.add_argument("--nodes", type=int, default=20000,
                        help="number of quadrature nodes")
    parser.add_argument("--degree", type=int, default=24,
                        help="polynomial degree for the Gaussian evaluator")
    parser.add_argument("--repeats", type=int, default=20)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    z = rng.standard_normal(args.nodes) + 1j * rng.standard_normal(args.nodes)
    coeffs = rng.standard_normal(args.degree + 1) \
        + 1j * rng.standard_normal(args.degree + 1)

    cases = [
        ("hermite_table", _kernels.hermite_table_numpy,
         _kernels.hermite_table_numba, (args.n_max, z)),
        ("poly_gauss_eval", _kernels.poly_gauss_eval_numpy,
         _kernels.poly_gauss_eval_numba, (coeffs, 0.8 - 0.2j, 0.1j, z)),
    ]

    print(f"dispatching backend: {_kernels.BACKEND}")
    print(f"{'kernel':>16s} {'numpy [ms]':>12s} {'numba [ms]':>12s} {'speedup':>9s}")
    for name, np_func, nb_func, call_args in cases:
        t_np = time_call(np_func, *call_args, repeats=args.repeats)
        if nb_func is None:
            print(f"{name:>16s} {1e3 * t_np:12.3f} {'n/a':>12s} {'n/a':>9s}")
            continue
        t_nb = time_call(nb_func, *call_args, repeats=args.repeats)
        print(f"{name:>16s} {1e3 * t_np:12.3f} {1e3 * t_nb:12.3f} "
              f"{t_np / t_nb:9.2f}")


if __name__ == "__main__":
    main()
