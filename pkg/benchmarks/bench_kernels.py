"""Timing comparison of the compiled and numpy kernel backends.

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --p 9999991 --deg 12 --repeat 7

The same inputs run through every available backend; each row reports the
best of --repeat runs, and the outputs are checked for agreement while
timing. The count row re-runs the whole pipeline on a fixed curve over
Z/p^8, showing how much of end-to-end time the kernels account for.
"""

from __future__ import annotations

import argparse
import random
from time import perf_counter

import numpy as np

from ppcount import _backend
from ppcount.counter import count_points
from ppcount.curve import normalize
from ppcount.modarith import PrimePowerCtx, is_prime
from ppcount.unipoly import UniPoly


def best_of(fn, repeat: int) -> tuple[float, object]:
    best, result = float("inf"), None
    for _ in range(repeat):
        started = perf_counter()
        result = fn()
        best = min(best, perf_counter() - started)
    return best, result


def bench_kernels(p: int, deg: int, repeat: int) -> list[tuple[str, str, float]]:
    rnd = random.Random(f"bench:{p}:{deg}")
    coeffs = [rnd.randrange(p) for _ in range(deg + 1)]
    rows = []
    for kernel in ("hist_eval", "roots_scan"):
        reference = None
        for name in _backend.available():
            _backend.use(name)
            fn = getattr(_backend, kernel)
            t, out = best_of(lambda: fn(coeffs, p), repeat)
            if reference is None:
                reference = out
            elif not np.array_equal(reference, out):
                raise AssertionError(f"{kernel}: backends disagree at p={p}")
            rows.append((kernel, name, t))
    return rows


def bench_count(p: int, repeat: int) -> list[tuple[str, str, float]]:
    ctx = PrimePowerCtx.create(p, 8)
    m = ctx.modulus
    curve = normalize(UniPoly.make((-1, -1, 0, -1), m), UniPoly.make((0, 0, 1), m), ctx)
    rows = []
    reference = None
    for name in _backend.available():
        _backend.use(name)
        t, res = best_of(lambda: count_points(curve).N, repeat)
        if reference is None:
            reference = res
        elif res != reference:
            raise AssertionError(f"count: backends disagree at p={p}")
        rows.append(("count k=8", name, t))
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=int, default=1000003, help="prime modulus for the kernels")
    parser.add_argument("--deg", type=int, default=8, help="polynomial degree")
    parser.add_argument("--repeat", type=int, default=5, help="runs per row, best is kept")
    args = parser.parse_args()
    if not is_prime(args.p):
        parser.error(f"--p must be prime, got {args.p}")

    original = _backend.BACKEND
    try:
        rows = bench_kernels(args.p, args.deg, args.repeat)
        rows += bench_count(args.p, args.repeat)
    finally:
        _backend.use(original)

    print(f"p = {args.p}, deg = {args.deg}, best of {args.repeat}")
    print(f"{'kernel':<12} {'backend':<8} {'seconds':>10}  relative")
    baseline: dict[str, float] = {}
    for kernel, name, t in rows:
        base = baseline.setdefault(kernel, t)
        rel = "1.00x" if t == base else f"{t / base:.2f}x"
        print(f"{kernel:<12} {name:<8} {t:>10.5f}  {rel}")


if __name__ == "__main__":
    main()
