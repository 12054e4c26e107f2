#!/usr/bin/env python3
"""Benchmark the compiled kernel extension against the pure-NumPy fallback.

Times batched point-source value and gradient evaluation for growing
point counts and prints a per-size speedup table.  Both backends are
loaded directly, so the script works regardless of HARMINT_BACKEND.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from harmint import _purekern

try:
    from harmint import _fastkern
except ImportError:
    _fastkern = None


def make_problem(rng, n, n_src, n_pts):
    src = np.column_stack(
        [rng.uniform(-2, 2, size=(n_src, n - 1)), -rng.uniform(0.3, 2.0, size=n_src)]
    )
    strength = rng.normal(size=n_src)
    kindcode = rng.integers(0, 3, size=n_src)
    axis0 = rng.integers(0, n - 1, size=n_src)
    pts = np.column_stack(
        [rng.uniform(-3, 3, size=(n_pts, n - 1)), rng.uniform(0.0, 3.0, size=n_pts)]
    )
    return pts, src, strength, kindcode, axis0


def best_of(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dimension", type=int, default=3)
    ap.add_argument("--sources", type=int, default=64)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument(
        "--sizes", type=int, nargs="+", default=[100, 1000, 10000, 100000]
    )
    args = ap.parse_args()

    if _fastkern is None:
        print("compiled extension not built; nothing to compare")
        return

    rng = np.random.default_rng(0)
    print(f"n = {args.dimension}, sources = {args.sources}, best of {args.repeats}")
    print(f"{'points':>8} {'op':>8} {'python':>12} {'compiled':>12} {'speedup':>8}")
    for n_pts in args.sizes:
        pts, src, strength, kindcode, axis0 = make_problem(
            rng, args.dimension, args.sources, n_pts
        )
        problem = (pts, src, strength, kindcode, axis0, args.dimension)

        ref = _purekern.ps_values(*problem)
        got = _fastkern.ps_values(*problem)
        np.testing.assert_allclose(got, ref, rtol=1e-12)

        for op in ("ps_values", "ps_gradients"):
            t_py = best_of(lambda: getattr(_purekern, op)(*problem), args.repeats)
            t_c = best_of(lambda: getattr(_fastkern, op)(*problem), args.repeats)
            print(
                f"{n_pts:>8} {op[3:]:>8} {t_py * 1e3:>10.3f}ms "
                f"{t_c * 1e3:>10.3f}ms {t_py / t_c:>7.1f}x"
            )


if __name__ == "__main__":
    main()
