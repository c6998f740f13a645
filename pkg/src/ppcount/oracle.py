"""Slow reference counters used to check the fast paths.

Everything here works on plain coefficient sequences with stdlib arithmetic
only: no numpy, no kernel backends, no shared helpers with the counting
engine. Evaluation is term-by-term powering rather than Horner, recentring
goes through the binomial theorem, and histograms are Counter dicts. The
point is that a bug in the engine's arithmetic cannot cancel against the
same bug here.

All entry points refuse instances past an explicit work ceiling instead of
grinding forever.
"""

from __future__ import annotations

from collections import Counter
from math import comb
from typing import Sequence

from ppcount.errors import OracleTooLarge

# Pair-space bound for the histogram counter (work is only p^k per part).
DEFAULT_CEILING = 10**8
# The literal two-loop counter really does p^(2k) work, so it gets less.
PAIRS_CEILING = 10**6
FP_SCAN_CEILING = 10**5


def _eval(coeffs: Sequence[int], x: int, m: int) -> int:
    total = 0
    for i, c in enumerate(coeffs):
        total += c * pow(x, i, m)
    return total % m


def brute_count(
    g: Sequence[int],
    h: Sequence[int],
    p: int,
    k: int,
    ceiling: int = DEFAULT_CEILING,
) -> int:
    """#{(a, b) in (Z/p^k)^2 : g(a) + h(b) = 0} by exhaustive evaluation."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if p ** (2 * k) > ceiling:
        raise OracleTooLarge(f"p^2k = {p ** (2 * k)} exceeds ceiling {ceiling}")
    m = p**k
    gvals = Counter(_eval(g, a, m) for a in range(m))
    hvals = Counter(_eval(h, b, m) for b in range(m))
    return sum(cnt * hvals[(m - v) % m] for v, cnt in gvals.items())


def brute_count_pairs(
    g: Sequence[int],
    h: Sequence[int],
    p: int,
    k: int,
    ceiling: int = PAIRS_CEILING,
) -> int:
    """Same count by the literal double loop; a second, dumber witness."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if p ** (2 * k) > ceiling:
        raise OracleTooLarge(f"p^2k = {p ** (2 * k)} exceeds ceiling {ceiling}")
    m = p**k
    n = 0
    for a in range(m):
        for b in range(m):
            if (_eval(g, a, m) + _eval(h, b, m)) % m == 0:
                n += 1
    return n


def brute_roots(
    g: Sequence[int],
    h: Sequence[int],
    p: int,
    j: int,
    ceiling: int = PAIRS_CEILING,
) -> list[tuple[int, int]]:
    """All roots of g(x1) + h(x2) in (Z/p^j)^2, sorted."""
    if j < 1:
        raise ValueError(f"j must be >= 1, got {j}")
    if p ** (2 * j) > ceiling:
        raise OracleTooLarge(f"p^2j = {p ** (2 * j)} exceeds ceiling {ceiling}")
    m = p**j
    return sorted(
        (a, b)
        for a in range(m)
        for b in range(m)
        if (_eval(g, a, m) + _eval(h, b, m)) % m == 0
    )


def brute_fp_roots(coeffs: Sequence[int], p: int, ceiling: int = FP_SCAN_CEILING) -> set[int]:
    """Roots of a univariate over F_p by scanning every residue."""
    if p > ceiling:
        raise OracleTooLarge(f"p = {p} exceeds ceiling {ceiling}")
    return {a for a in range(p) if _eval(coeffs, a, p) == 0}


def brute_fp_points(
    g: Sequence[int], h: Sequence[int], p: int, ceiling: int = FP_SCAN_CEILING
) -> list[tuple[int, int]]:
    """All F_p points of the reduction, sorted; quadratic scan."""
    if p * p > ceiling:
        raise OracleTooLarge(f"p^2 = {p * p} exceeds ceiling {ceiling}")
    return [
        (a, b)
        for a in range(p)
        for b in range(p)
        if (_eval(g, a, p) + _eval(h, b, p)) % p == 0
    ]


def _shift(coeffs: Sequence[int], center: int, m: int) -> list[int]:
    # u(center + t) expanded in t via the binomial theorem.
    out = [0] * max(len(coeffs), 1)
    for i, c in enumerate(coeffs):
        for j in range(i + 1):
            out[j] = (out[j] + c * comb(i, j) * pow(center, i - j, m)) % m
    return out


def brute_multiplicity(
    g: Sequence[int], h: Sequence[int], p: int, zeta: tuple[int, int]
) -> int:
    """Multiplicity of the mod-p reduction at zeta; 0 off the curve.

    The reduction must not vanish identically. Because the polynomial is a
    sum of univariates, the multiplicity is the least j >= 1 with a nonzero
    degree-j term in either recentred part, once the point lies on the curve.
    """
    gp = [c % p for c in g]
    hp = [c % p for c in h]
    if not any(gp) and not any(hp):
        raise ValueError("reduction mod p is identically zero")
    a, b = zeta[0] % p, zeta[1] % p
    if (_eval(gp, a, p) + _eval(hp, b, p)) % p != 0:
        return 0
    gs = _shift(gp, a, p)
    hs = _shift(hp, b, p)
    for j in range(1, max(len(gs), len(hs))):
        if (j < len(gs) and gs[j]) or (j < len(hs) and hs[j]):
            return j
    raise ValueError("reduction is a constant on the curve, multiplicity undefined")
