#!/usr/bin/env python3
"""Benchmark the numba kernel against the pure-numpy fallback.

The hot primitive is batch Horner evaluation over F_{p^k}; it backs point
enumeration, root scans and batch isogeny evaluation.  Run:

    python benchmarks/bench_backends.py

The library picks its backend from ISODUAL_BACKEND (auto/numba/numpy); this
script times both explicitly on the same workloads.
"""

import time

import numpy as np

from isodual import accel, make_field
from isodual.curve import Curve, enumerate_points
from isodual.polyrat import Poly

WORKLOADS = [
    # (p, k, polynomial degree) -- scan the whole field
    (13, 2, 3),
    (13, 4, 12),
    (11, 5, 12),
    (5, 6, 24),
    (999983, 1, 3),
]

REPS = 3


def bench_poly_eval(p, k, deg, backend):
    ctx = make_field(p, k)
    rng = np.random.default_rng(deg * p + k)
    coeffs = rng.integers(0, p, size=(deg + 1, k)).astype(np.int64)
    xs = accel.all_element_digits(p, k)
    red = ctx.red_array()
    accel.poly_eval_batch(coeffs, xs, p, red, backend=backend)  # warm/jit
    best = float("inf")
    for _ in range(REPS):
        t0 = time.perf_counter()
        out = accel.poly_eval_batch(coeffs, xs, p, red, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    print(f"available backends: {accel.available_backends()}")
    print(f"library default:    {accel.active_backend()}\n")
    print(f"{'workload':<32}{'numba':>12}{'numpy':>12}{'speedup':>10}")
    for p, k, deg in WORKLOADS:
        label = f"deg-{deg} poly over F_{p}^{k}"
        times = {}
        outs = {}
        for backend in accel.available_backends():
            times[backend], outs[backend] = bench_poly_eval(p, k, deg, backend)
        if len(outs) == 2 and not np.array_equal(outs["numba"], outs["numpy"]):
            raise SystemExit(f"backend disagreement on {label}")
        tn = times.get("numba")
        tp = times["numpy"]
        speedup = f"{tp / tn:9.2f}x" if tn else f"{'n/a':>10}"
        tn_s = f"{tn * 1e3:9.2f}ms" if tn else f"{'n/a':>11}"
        print(f"{label:<32}{tn_s:>12}{tp * 1e3:9.2f}ms{speedup:>10}")

    # end-to-end: enumerate a curve over F_{p^2} and over a large prime field
    from isodual.errors import SingularCurve
    for p, k in [(13, 2), (5, 6), (999983, 1)]:
        ctx = make_field(p, k)
        for b in range(1, p):
            try:
                E = Curve(ctx, 1, b)
                break
            except SingularCurve:
                continue
        t0 = time.perf_counter()
        pts = enumerate_points(E)
        dt = time.perf_counter() - t0
        print(f"\nenumerate E(F_{p}^{k}): {len(pts)} points in {dt*1e3:.1f} ms "
              f"({accel.active_backend()} backend)")


if __name__ == "__main__":
    main()
