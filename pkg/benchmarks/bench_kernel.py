#!/usr/bin/env python3
"""Benchmark the compiled sieve kernel against the numpy fallback.

Both backends implement the identical omega_segment contract; this script
times them on the same segments and checks they agree bit for bit.

Usage: python benchmarks/bench_kernel.py [--max-exp 26]
"""

import argparse
import math
import time

import numpy as np


def load_backends():
    from pntkit._kernel import _omega_np

    backends = {"numpy": _omega_np.omega_segment}
    try:
        from pntkit._kernel import _omega_cy

        backends["cython"] = _omega_cy.omega_segment
    except ImportError:
        print("compiled kernel not built; benchmarking numpy fallback only")
    return backends


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-exp", type=int, default=26,
                        help="largest segment is [1, 2^max_exp)")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    from pntkit import sieve

    backends = load_backends()
    print(f"{'range':>14} | " + " | ".join(f"{name:>10}" for name in backends) + " | speedup")
    print("-" * (18 + 13 * len(backends) + 10))
    for exp in range(20, args.max_exp + 1, 2):
        hi = 2**exp
        primes = sieve.base_primes(math.isqrt(hi - 1))
        times = {}
        results = {}
        for name, fn in backends.items():
            best = math.inf
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                out = fn(1, hi, primes)
                best = min(best, time.perf_counter() - t0)
            times[name] = best
            results[name] = out
        if len(results) == 2:
            a, b = results.values()
            assert np.array_equal(a, b), "backends disagree!"
        rate = ""
        if "cython" in times and "numpy" in times:
            rate = f"{times['numpy'] / times['cython']:.2f}x"
        cells = " | ".join(f"{times[name] * 1e3:9.1f}ms" for name in backends)
        print(f"[1, 2^{exp:2d})     | {cells} | {rate}")


if __name__ == "__main__":
    main()
