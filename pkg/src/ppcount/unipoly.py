"""Univariate polynomials over Z/p^k and F_p.

Coefficients are stored low degree first as canonical residues with trailing
zeros trimmed, so the zero polynomial is the empty tuple and degree() is None
exactly then. Ring operations take the working modulus explicitly: the same
coefficient data is routinely read at several precisions during the counting
recursion, and the parameter keeps those reductions visible at call sites.

Root finding over F_p offers a brute scan and Cantor-Zassenhaus. CZ first
extracts the product of the distinct linear factors, gcd(f, x^p - x), then
splits it with random powers (x+r)^((p-1)/2) - 1, retrying until the split
succeeds, so the output is always exact and only the running time is random.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from ppcount import _backend
from ppcount.errors import InternalInvariantError, PrimeTooLarge, ZeroPolynomial
from ppcount.modarith import SplitRng, Valuation, valp


class RootMethod(Enum):
    BRUTE = "brute"
    CZ = "cz"
    AUTO = "auto"


# AUTO switches to the scan when it is no more than ~64 polynomial evaluations
# per CZ modular multiplication, which is roughly where the crossover sits.
_AUTO_BRUTE_CEILING = 4096
_AUTO_DEGREE_FACTOR = 64

_BRUTE_PRIME_CEILING = 1 << 31


@dataclass(frozen=True)
class UniPoly:
    """An element of (Z/m)[x], canonically reduced and trimmed."""

    coeffs: tuple[int, ...]
    modulus: int

    @staticmethod
    def make(coeffs, modulus: int) -> "UniPoly":
        if modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {modulus}")
        cs = [c % modulus for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return UniPoly(tuple(cs), modulus)

    @staticmethod
    def zero(modulus: int) -> "UniPoly":
        return UniPoly.make((), modulus)

    def degree(self) -> int | None:
        """Largest index with a nonzero coefficient; None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def constant(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def reduce_mod(self, m: int) -> "UniPoly":
        return UniPoly.make(self.coeffs, m)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("x" if c == 1 else f"{c}*x")
            else:
                parts.append(f"x^{i}" if c == 1 else f"{c}*x^{i}")
        return " + ".join(parts)


def eval_mod(f: UniPoly, a: int, m: int) -> int:
    """f(a) mod m by Horner."""
    acc = 0
    a %= m
    for c in reversed(f.coeffs):
        acc = (acc * a + c) % m
    return acc


def add_constant(f: UniPoly, c: int) -> UniPoly:
    """f + c in f's own modulus."""
    cs = list(f.coeffs) or [0]
    cs[0] = (cs[0] + c) % f.modulus
    return UniPoly.make(cs, f.modulus)


def drop_constant(f: UniPoly) -> UniPoly:
    """f - f(0)."""
    if not f.coeffs or f.coeffs[0] == 0:
        return f
    return UniPoly.make((0,) + f.coeffs[1:], f.modulus)


def recenter(f: UniPoly, zeta: int, m: int) -> UniPoly:
    """Coefficients of f(x + zeta) mod m, by repeated synthetic division."""
    cs = [c % m for c in f.coeffs]
    zeta %= m
    n = len(cs)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            cs[j] = (cs[j] + zeta * cs[j + 1]) % m
    return UniPoly.make(cs, m)


def taylor_shift_p(f: UniPoly, zeta: int, p: int, m: int) -> UniPoly:
    """Coefficients of f(zeta + p*x) mod m.

    Degree is preserved over the integers, but coefficients of index i carry
    a factor p^i and may vanish mod m; those are trimmed like any other zero.
    """
    rec = recenter(f, zeta, m)
    scaled = [c * pow(p, i, m) % m for i, c in enumerate(rec.coeffs)]
    return UniPoly.make(scaled, m)


def content_valuation(f: UniPoly, p: int, cap: int) -> Valuation:
    """min_i ord_p(coefficient i), capped; the zero polynomial returns the cap."""
    best = cap
    for c in f.coeffs:
        v = valp(c, p, cap=best).value
        if v < best:
            best = v
            if best == 0:
                break
    return Valuation(best)


def divide_exact(f: UniPoly, p: int, s: int, new_m: int) -> UniPoly:
    """f / p^s reduced mod new_m; every coefficient must be divisible by p^s."""
    q = p**s
    out = []
    for i, c in enumerate(f.coeffs):
        if c % q:
            raise InternalInvariantError(
                f"coefficient {c} at index {i} is not divisible by {p}^{s}"
            )
        out.append((c // q) % new_m)
    return UniPoly.make(out, new_m)


def fp_derivative(f: UniPoly) -> UniPoly:
    """Formal derivative; intended for polynomials already reduced mod a prime."""
    m = f.modulus
    return UniPoly.make([i * c % m for i, c in enumerate(f.coeffs)][1:], m)


# ---------------------------------------------------------------------------
# F_p polynomial arithmetic on raw coefficient lists (low degree first).
# ---------------------------------------------------------------------------


def _trim(cs: list[int]) -> list[int]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        ai = a[i] if i < len(a) else 0
        bi = b[i] if i < len(b) else 0
        out[i] = (ai - bi) % p
    return _trim(out)


def _pmonic(a: list[int], p: int) -> list[int]:
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _pdivmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    """Quotient and remainder of a by nonzero b over F_p."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    rem = [c % p for c in a]
    quo = [0] * max(0, len(rem) - len(b) + 1)
    for shift in range(len(rem) - len(b), -1, -1):
        c = rem[shift + len(b) - 1] * inv % p
        if c:
            quo[shift] = c
            for i, bi in enumerate(b):
                rem[shift + i] = (rem[shift + i] - c * bi) % p
    return _trim(quo), _trim(rem)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _pdivmod(a, b, p)
        a, b = b, r
    return _pmonic(a, p)


def _ppowmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    """base^e reduced by the monic polynomial mod, over F_p."""
    _, acc = _pdivmod([1], mod, p)
    _, base = _pdivmod(base, mod, p)
    while e:
        if e & 1:
            acc = _pdivmod(_pmul(acc, base, p), mod, p)[1]
        base = _pdivmod(_pmul(base, base, p), mod, p)[1]
        e >>= 1
    return acc


def fp_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over F_p (the modulus of the operands, assumed prime)."""
    p = a.modulus
    return UniPoly.make(_pgcd(list(a.coeffs), list(b.coeffs), p), p)


@dataclass
class RootStats:
    """Mutable sink for root-finding telemetry."""

    retries: int = 0


def _cz_linear_roots(f: list[int], p: int, rng: SplitRng, stats: RootStats | None) -> set[int]:
    fm = _pmonic(f, p)
    if len(fm) <= 1:
        return set()
    # product of the distinct linear factors: gcd(f, x^p - x)
    xp = _ppowmod([0, 1], p, fm, p)
    lin = _pgcd(fm, _psub(xp, [0, 1], p), p)
    roots: set[int] = set()
    stack = [lin]
    while stack:
        w = stack.pop()
        if len(w) <= 1:
            continue
        if len(w) == 2:
            roots.add(-w[0] % p)
            continue
        if p == 2:
            # w divides x^2 - x and has degree 2, so both residues are roots.
            roots.update((0, 1))
            continue
        r = rng.randrange(p)
        t = _ppowmod([r, 1], (p - 1) // 2, w, p)
        t = _psub(t, [1], p)
        d = _pgcd(w, t, p)
        if 0 < len(d) - 1 < len(w) - 1:
            stack.append(d)
            stack.append(_pdivmod(w, d, p)[0])
        else:
            if stats is not None:
                stats.retries += 1
            stack.append(w)
    return roots


def fp_roots(
    f: UniPoly,
    method: RootMethod = RootMethod.AUTO,
    rng: SplitRng | None = None,
    stats: RootStats | None = None,
) -> set[int]:
    """All roots of f in F_p, where p is f's (prime) modulus.

    The result is exact for every method; AUTO picks the brute scan for small
    p and Cantor-Zassenhaus otherwise.
    """
    p = f.modulus
    if f.is_zero():
        raise ZeroPolynomial("every residue is a root of the zero polynomial")
    deg = f.degree()
    if deg == 0:
        return set()
    if method == RootMethod.AUTO:
        if p <= _AUTO_BRUTE_CEILING or p <= _AUTO_DEGREE_FACTOR * deg:
            method = RootMethod.BRUTE
        else:
            method = RootMethod.CZ
    if method == RootMethod.BRUTE:
        if p >= _BRUTE_PRIME_CEILING:
            raise PrimeTooLarge(f"brute root scan needs p < 2^31, got {p}")
        return {int(a) for a in _backend.roots_scan(list(f.coeffs), p)}
    return _cz_linear_roots(list(f.coeffs), p, rng or SplitRng(0), stats)


@dataclass(frozen=True)
class RootProfile:
    """Roots of a polynomial over F_p together with their multiplicities."""

    entries: dict[int, int] = field(default_factory=dict)

    def degenerate_roots(self) -> list[int]:
        """Roots of multiplicity >= 2, sorted."""
        return sorted(a for a, m in self.entries.items() if m >= 2)

    def nondegenerate_count(self) -> int:
        return sum(1 for m in self.entries.values() if m == 1)


def fp_root_multiplicities(
    f: UniPoly,
    method: RootMethod = RootMethod.AUTO,
    rng: SplitRng | None = None,
    stats: RootStats | None = None,
) -> RootProfile:
    """Root multiplicities over F_p, by repeated division by x - a."""
    p = f.modulus
    roots = fp_roots(f, method=method, rng=rng, stats=stats)
    entries: dict[int, int] = {}
    for a in roots:
        cs = list(f.coeffs)
        mult = 0
        while True:
            quo, rem = _pdivmod(cs, [-a % p, 1], p)
            if rem:
                break
            mult += 1
            cs = quo
        entries[a] = mult
    return RootProfile(entries)
