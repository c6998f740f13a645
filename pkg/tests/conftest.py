"""Shared corpus generation for the test suite.

The corpus is deterministic (string-seeded Random, no process salt) so every
run sees the same curves. Each (p, k) cell starts with engineered shapes
that force the rare branches: zero polynomials, constants, p-content,
one-sided curves, Frobenius-degenerate reductions, engineered double points,
superelliptic curves, and p^(k-1)-scaled instances. Random fill keeps
degrees within [0, 5] and coefficients within [-p^k, p^k].
"""

from __future__ import annotations

import random

from hypothesis import HealthCheck, settings

from ppcount import PrimePowerCtx, SeparatedCurve, UniPoly, normalize

settings.register_profile(
    "suite",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

CORPUS_PRIMES = (2, 3, 5, 7)
CORPUS_KS = (1, 2, 3, 4)
PER_CELL = 32


def build(p: int, k: int, g, h) -> SeparatedCurve:
    m = p**k
    return normalize(UniPoly.make(g, m), UniPoly.make(h, m), PrimePowerCtx.create(p, k))


def _random_part(rnd: random.Random, bound: int) -> tuple[int, ...]:
    deg = rnd.randrange(0, 6)
    return tuple(rnd.randrange(-bound, bound + 1) for _ in range(deg + 1))


def corpus_cell(p: int, k: int, n: int = PER_CELL) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """n coefficient pairs (g, h) for one (p, k) cell, engineered shapes first."""
    rnd = random.Random(f"ppcount-corpus:{p}:{k}")
    m = p**k
    a, b = rnd.randrange(p), rnd.randrange(p)
    shapes: list[tuple[tuple[int, ...], tuple[int, ...]]] = [
        ((), ()),  # zero polynomial
        ((1,), ()),  # unit constant
        ((m - 1,), (0, p % m)),  # constant plus a p-multiple slope
        ((0, 0, 1), (0, 0, 1)),  # x1^2 + x2^2
        ((0, 0, 0, -1), (0, 0, 1)),  # x2^2 - x1^3
        ((0, 0, 1), (0, -p)),  # x1^2 - p x2, the line branch
        ((-1, 0, 0, 0, 0, 1), (0, 0, 0, 0, 0, 1)),  # x1^5 + x2^5 - 1
        ((a * a % m, (-2 * a) % m, 1), (b * b % m, (-2 * b) % m, 1)),  # double point
        (tuple(rnd.randrange(-m, m + 1) for _ in range(4)), (0, 0, 1)),  # superelliptic
        (tuple(rnd.randrange(-m, m + 1) for _ in range(5)), ()),  # g alone
        ((rnd.randrange(-m, m + 1),), tuple([0] + [rnd.randrange(-m, m + 1) for _ in range(4)])),
    ]
    if p <= 5:  # Frobenius shape: both derivatives vanish identically mod p
        shapes.append(
            (
                tuple([rnd.randrange(m)] + [0] * (p - 1) + [1]),
                tuple([0] * p + [1]),
            )
        )
    if k >= 2:  # p-content and p^(k-1) scaling
        q = p ** (k - 1)
        shapes.append(
            (
                tuple(p * rnd.randrange(-p, p + 1) for _ in range(4)),
                tuple(p * rnd.randrange(-p, p + 1) for _ in range(3)),
            )
        )
        shapes.append(
            (
                tuple(q * rnd.randrange(-p, p + 1) for _ in range(3)),
                tuple(q * rnd.randrange(-p, p + 1) for _ in range(3)),
            )
        )
    out = shapes[:n]
    while len(out) < n:
        out.append((_random_part(rnd, m), _random_part(rnd, m)))
    return out


def corpus() -> list[tuple[int, int, tuple[int, ...], tuple[int, ...]]]:
    """The full cross-product corpus: (p, k, g_coeffs, h_coeffs) rows."""
    rows = []
    for p in CORPUS_PRIMES:
        for k in CORPUS_KS:
            for g, h in corpus_cell(p, k):
                rows.append((p, k, g, h))
    return rows


def large_instances(n: int = 100, p: int = 9973) -> list[tuple[int, int, tuple, tuple]]:
    """Random larger instances for the structural bounds: k <= 16, deg <= 8."""
    rnd = random.Random(f"ppcount-structural:{p}")
    rows = []
    for _ in range(n):
        k = rnd.randrange(1, 17)
        m = p**k
        g = tuple(rnd.randrange(-m, m + 1) for _ in range(rnd.randrange(1, 10)))
        h = tuple(rnd.randrange(-m, m + 1) for _ in range(rnd.randrange(1, 10)))
        rows.append((p, k, g, h))
    return rows
