"""Benchmark: compiled convolution kernels vs the numpy fallback.

Times the three hot primitives (whole-grid product-trapezoid application,
lower-triangular convolution, per-step predictor-corrector history sums)
and one end-to-end solve on each backend.

Usage: python benchmarks/bench_backends.py [--sizes 2048,8192,16384]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from fracasym._core import _kernels_py

try:
    from fracasym._core import _kernels as _compiled
except ImportError:
    _compiled = None

from fracasym.fracops import rectangle_coefficients, trapezoid_coefficients


def _time(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(n: int):
    rng = np.random.default_rng(0)
    f = rng.normal(size=n + 1)
    diffs = np.diff(f)
    a, c = trapezoid_coefficients(0.6, n)
    b = rectangle_coefficients(0.4, n)

    rows = []
    for label, mod in (("python", _kernels_py),) + (
            (("compiled", _compiled),) if _compiled else ()):
        t_trap = _time(lambda: mod.trap_apply(a, c, f, 1.0))
        t_conv = _time(lambda: mod.conv_lower(b, diffs, 1.0))

        def march():
            for m in range(1, n + 1):
                mod.pc_sums(b, a, b, a, f, m, 0)

        t_march = _time(march, repeats=1)
        rows.append((label, t_trap, t_conv, t_march))
    return rows


def bench_solve(n: int):
    import fracasym.fracops as fracops
    import fracasym.solvers as solvers
    from fracasym.catalog import make_rhs
    from fracasym.solvers import ProblemKind, ProblemSpec, solve_sequential

    rhs = make_rhs("exp_decay_power", {"rate": 1.0, "exponent": 0.5},
                   0.5, "sequential")
    spec = ProblemSpec(ProblemKind.SEQUENTIAL, 0.5, 0.25, 1.0, rhs, b2=1.0)

    results = []
    backends = [("python", _kernels_py)] + ([("compiled", _compiled)]
                                            if _compiled else [])
    saved_s, saved_f = solvers.kernels, fracops.kernels
    try:
        for label, mod in backends:
            solvers.kernels = mod
            fracops.kernels = mod
            results.append((label, _time(
                lambda: solve_sequential(spec, 100.0, n), repeats=1)))
    finally:
        solvers.kernels = saved_s
        fracops.kernels = saved_f
    return results


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="2048,8192,16384",
                        help="comma-separated grid sizes")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if _compiled is None:
        print("compiled extension not available; timing the fallback only\n")

    print(f"{'N':>7} {'backend':>9} {'trap_apply':>12} {'conv_lower':>12} "
          f"{'pc march':>12}")
    for n in sizes:
        for label, t_trap, t_conv, t_march in bench_kernels(n):
            print(f"{n:7d} {label:>9} {t_trap * 1e3:10.2f}ms {t_conv * 1e3:10.2f}ms "
                  f"{t_march * 1e3:10.2f}ms")

    print(f"\nend-to-end sequential solve (damped square-root feedback, T=100):")
    print(f"{'N':>7} {'backend':>9} {'solve':>12}")
    for n in sizes:
        for label, t in bench_solve(n):
            print(f"{n:7d} {label:>9} {t * 1e3:10.2f}ms")


if __name__ == "__main__":
    main()
