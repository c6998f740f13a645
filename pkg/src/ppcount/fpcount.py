"""Point counts over F_p for separated curves.

A separated f = g(x1) + h(x2) has root count over F_p equal to the
correlation of the two value histograms:

    #roots = sum_v #{a : g(a) = v} * #{b : h(b) = -v}

so one pass of p evaluations per part suffices, never p^2 pairs. Histograms
come from the kernel backend; everything here stays inside int64 because
p < 2^31 and the final sum is at most p^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ppcount import _backend
from ppcount.curve import (
    AllCurvePoints,
    HorizontalLines,
    IsolatedPoints,
    SeparatedCurve,
    SingularLocus,
    VerticalLines,
    singular_locus,
)
from ppcount.errors import PrimeTooLarge, ZeroReduction
from ppcount.modarith import SplitRng
from ppcount.unipoly import RootMethod, RootStats, UniPoly

# Above this the int64 histogram kernels stop being valid.
DEFAULT_PRIME_CEILING = 1 << 31


def _check_prime_size(p: int, ceiling: int) -> None:
    limit = min(ceiling, DEFAULT_PRIME_CEILING)
    if p >= limit:
        raise PrimeTooLarge(f"p = {p} exceeds the F_p scan ceiling {limit}")


@dataclass(frozen=True, eq=False)
class ValueHistogram:
    """counts[v] = #{a in F_p : u(a) = v}, as an int64 vector of length p."""

    p: int
    counts: np.ndarray

    def roots(self) -> int:
        return int(self.counts[0])


def value_histogram(u: UniPoly, p: int, ceiling: int = DEFAULT_PRIME_CEILING) -> ValueHistogram:
    _check_prime_size(p, ceiling)
    return ValueHistogram(p=p, counts=_backend.hist_eval(u.reduce_mod(p).coeffs, p))


def fp_point_count(curve: SeparatedCurve, ceiling: int = DEFAULT_PRIME_CEILING) -> int:
    """Number of (a, b) in F_p^2 with g(a) + h(b) = 0."""
    p = curve.ctx.p
    gbar, hbar = curve.reduced_parts()
    if gbar.is_zero() and hbar.is_zero():
        raise ZeroReduction("curve vanishes mod p")
    cg = value_histogram(gbar, p, ceiling).counts
    ch = value_histogram(hbar, p, ceiling).counts
    # Pair value v with -v: index 0 stays, 1..p-1 reverse.
    ch_neg = np.concatenate((ch[:1], ch[:0:-1]))
    return int(np.dot(cg, ch_neg))


def fp_smooth_count(
    curve: SeparatedCurve,
    locus: SingularLocus | None = None,
    method: RootMethod = RootMethod.AUTO,
    rng: SplitRng | None = None,
    stats: RootStats | None = None,
    ceiling: int = DEFAULT_PRIME_CEILING,
) -> int:
    """Number of F_p points of the reduction that are smooth.

    Line loci knock out p points each, isolated ones a point each; when both
    derivatives vanish identically nothing is smooth.
    """
    if locus is None:
        locus = singular_locus(curve, rng=rng, method=method, stats=stats)
    if isinstance(locus, AllCurvePoints):
        return 0
    total = fp_point_count(curve, ceiling)
    if isinstance(locus, IsolatedPoints):
        return total - len(locus.points)
    if isinstance(locus, VerticalLines):
        return total - curve.ctx.p * len(locus.x1_values)
    if isinstance(locus, HorizontalLines):
        return total - curve.ctx.p * len(locus.x2_values)
    raise TypeError(f"unknown locus {locus!r}")


def fp_curve_points(curve: SeparatedCurve, ceiling: int = DEFAULT_PRIME_CEILING) -> list[tuple[int, int]]:
    """All F_p points of the reduction, lexicographically sorted.

    Used when the locus degenerates to the whole curve and the points must be
    walked one by one. Buckets a-values by g(a) and joins against the
    b-values with matching -h(b), so the cost is p log p plus the output.
    """
    p = curve.ctx.p
    _check_prime_size(p, ceiling)
    gbar, hbar = curve.reduced_parts()
    if gbar.is_zero() and hbar.is_zero():
        raise ZeroReduction("curve vanishes mod p")
    gv = _eval_all(gbar, p)
    hv_neg = (-_eval_all(hbar, p)) % p
    order_a = np.argsort(gv, kind="stable")
    order_b = np.argsort(hv_neg, kind="stable")
    sorted_g = gv[order_a]
    sorted_h = hv_neg[order_b]
    starts = np.flatnonzero(np.r_[True, sorted_g[1:] != sorted_g[:-1]])
    ends = np.r_[starts[1:], len(sorted_g)]
    points: list[tuple[int, int]] = []
    for i in range(len(starts)):
        av = sorted_g[starts[i]]
        lo = np.searchsorted(sorted_h, av, side="left")
        hi = np.searchsorted(sorted_h, av, side="right")
        if lo == hi:
            continue
        bs = np.sort(order_b[lo:hi])
        for aa in np.sort(order_a[starts[i] : ends[i]]):
            for bb in bs:
                points.append((int(aa), int(bb)))
    points.sort()
    return points


def _eval_all(u: UniPoly, p: int) -> np.ndarray:
    if u.is_zero():
        return np.zeros(p, dtype=np.int64)
    a = np.arange(p, dtype=np.int64)
    acc = np.full(p, u.coeffs[-1], dtype=np.int64)
    for c in reversed(u.coeffs[:-1]):
        acc *= a
        acc += c
        acc %= p
    return acc
