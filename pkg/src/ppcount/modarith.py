"""Arithmetic groundwork for prime power rings Z/p^k.

Residues are plain Python ints kept canonically in [0, modulus). Valuations
are ordinary integers extended by a distinguished infinity (the order of 0),
and every valuation routine accepts a cap so callers that only care about
"at least c" never pay for exact orders of huge integers.

The random generator is counter based and splittable: a child stream is
derived from a parent seed and a path label, so a tree-shaped computation
gets identical randomness no matter how its branches are scheduled.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from ppcount.errors import NotPrime

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

# Witnesses sufficient for a deterministic Miller-Rabin test below 3.3 * 10^24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _trial_division(n: int) -> bool:
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _miller_rabin(n: int) -> bool:
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@functools.lru_cache(maxsize=1024)
def is_prime(n: int) -> bool:
    """Deterministic primality: trial division below 2^32, Miller-Rabin above."""
    if n < 2:
        return False
    if n < 1 << 32:
        return _trial_division(n)
    for q in _MR_WITNESSES:
        if n % q == 0:
            return False
    return _miller_rabin(n)


@functools.total_ordering
class Valuation:
    """A p-adic order: a non-negative integer or infinity (stored as None).

    Infinity compares greater than every finite valuation; addition follows
    the usual convention that anything plus infinity is infinity.
    """

    __slots__ = ("value",)

    def __init__(self, value: int | None):
        if value is not None and value < 0:
            raise ValueError(f"valuation must be >= 0, got {value}")
        self.value = value

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __eq__(self, other):
        if not isinstance(other, Valuation):
            return NotImplemented
        return self.value == other.value

    def __lt__(self, other):
        if not isinstance(other, Valuation):
            return NotImplemented
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def __add__(self, other):
        if isinstance(other, int):
            other = Valuation(other)
        if not isinstance(other, Valuation):
            return NotImplemented
        if self.value is None or other.value is None:
            return INFINITE
        return Valuation(self.value + other.value)

    __radd__ = __add__

    def __int__(self) -> int:
        if self.value is None:
            raise ValueError("infinite valuation has no integer value")
        return self.value

    def __hash__(self):
        return hash(("Valuation", self.value))

    def __repr__(self):
        return "INFINITE" if self.value is None else f"Valuation({self.value})"


INFINITE = Valuation(None)


def valp(n: int, p: int, cap: int | None = None) -> Valuation:
    """The exact power of p dividing n; INFINITE for n == 0.

    With a cap the result is min(ord_p(n), cap), always finite, and the
    division chain stops as soon as the cap is reached.
    """
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    if n == 0:
        return INFINITE if cap is None else Valuation(cap)
    if n < 0:
        n = -n
    v = 0
    while n % p == 0:
        if cap is not None and v >= cap:
            break
        n //= p
        v += 1
    if cap is not None:
        v = min(v, cap)
    return Valuation(v)


@dataclass(frozen=True)
class PrimePowerCtx:
    """The ring Z/p^k for a prime p and precision k >= 1."""

    p: int
    k: int
    modulus: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"precision k must be >= 1, got {self.k}")
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if self.modulus != self.p**self.k:
            raise ValueError("modulus must equal p**k")

    @classmethod
    def create(cls, p: int, k: int) -> "PrimePowerCtx":
        return cls(p=p, k=k, modulus=p**k)

    def with_k(self, k: int) -> "PrimePowerCtx":
        """The same prime at a different precision."""
        if k == self.k:
            return self
        return PrimePowerCtx(p=self.p, k=k, modulus=self.p**k)

    def reduce(self, n: int) -> int:
        return n % self.modulus


def _mix64(z: int) -> int:
    # splitmix64 finalizer
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _path_hash(parts: tuple) -> int:
    # FNV-1a over a stable byte encoding; Python's hash() is salted per process
    # and therefore useless for reproducible streams.
    h = 0xCBF29CE484222325
    data = b"\x1f".join(str(part).encode("utf-8") for part in parts)
    for byte in data:
        h ^= byte
        h = (h * 0x100000001B3) & _MASK64
    return h


class SplitRng:
    """Counter-based splittable PRNG.

    Output i of a stream with seed s is splitmix64(s + (i+1)*golden); a child
    stream for a path label is the stream seeded with s XOR mix(hash(path)).
    Identical seeds and paths give identical streams on every platform and
    under every thread schedule.
    """

    __slots__ = ("seed", "_counter")

    def __init__(self, seed: int):
        self.seed = seed & _MASK64
        self._counter = 0

    def child(self, *path) -> "SplitRng":
        """An independent stream labelled by the given path components."""
        return SplitRng(self.seed ^ _mix64(_path_hash(path)))

    def next64(self) -> int:
        self._counter += 1
        return _mix64((self.seed + self._counter * _GOLDEN) & _MASK64)

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n), by rejection so small n stay unbiased."""
        if n <= 0:
            raise ValueError(f"randrange bound must be positive, got {n}")
        limit = ((1 << 64) // n) * n
        while True:
            r = self.next64()
            if r < limit:
                return r % n
