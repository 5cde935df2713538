#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Usage:
    python3 benchmarks/bench_kernels.py [--repeat N]

Times the two hot kernels (symmetric-Jacobi eigenvalues and the pure-
product grid minimization) on representative workloads, plus one full
POPT membership decision end to end on each backend.
"""

import argparse
import time

import numpy as np

from gptcomp._kernels import available_backends, get_backend
from gptcomp.composition import _sphere_grid, popt_membership
from gptcomp.operators import HermitianOperator


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    sym8 = [
        (lambda a: (a + a.T) / 2)(rng.normal(size=(8, 8))) for _ in range(50)
    ]
    coeff_tables = [rng.normal(size=(4, 4)) for _ in range(4)]

    rows = []
    for name in available_backends():
        kern = get_backend(name)
        t_jac = timeit(lambda: [kern.jacobi_eigenvalues(a) for a in sym8], args.repeat)
        rows.append((f"jacobi 8x8 x50", name, t_jac))
        for g in (16, 32, 48):
            pts, _ = _sphere_grid(g)
            t_grid = timeit(
                lambda: [kern.product_grid_min(pts, c) for c in coeff_tables],
                args.repeat,
            )
            rows.append((f"grid min g={g} x4", name, t_grid))

    w = HermitianOperator(np.diag([0.25, 0.35, 0.15, 0.25]))
    import gptcomp._kernels as kernels_mod

    active = kernels_mod.backend_name
    t_popt = timeit(lambda: popt_membership(w), args.repeat)
    print(f"active backend: {active}")
    print(f"{'workload':<22} {'backend':<10} {'best time':>12}")
    for label, name, t in rows:
        print(f"{label:<22} {name:<10} {t * 1000:>9.2f} ms")
    print(f"{'popt end-to-end':<22} {active:<10} {t_popt * 1000:>9.2f} ms")

    by_label = {}
    for label, name, t in rows:
        by_label.setdefault(label, {})[name] = t
    if all(len(v) == 2 for v in by_label.values()):
        print("\nspeedup (python / compiled):")
        for label, v in by_label.items():
            print(f"  {label:<22} {v['python'] / v['compiled']:>6.1f}x")


if __name__ == "__main__":
    main()
