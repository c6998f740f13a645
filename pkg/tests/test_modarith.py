import pytest
from hypothesis import given
from hypothesis import strategies as st

from ppcount.errors import NotPrime
from ppcount.modarith import (
    INFINITE,
    PrimePowerCtx,
    SplitRng,
    Valuation,
    is_prime,
    valp,
)


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}
    for n in range(40):
        assert is_prime(n) == (n in primes)


def test_is_prime_carmichael_and_large():
    assert not is_prime(561)  # Carmichael
    assert not is_prime(1_000_001)  # 101 * 9901
    assert is_prime(1_000_003)
    assert is_prime(2**31 - 1)
    assert is_prime(2**61 - 1)  # exercises the Miller-Rabin path
    assert not is_prime(2**61 + 1)


def test_valuation_ordering():
    assert Valuation(0) < Valuation(3) < INFINITE
    assert INFINITE == Valuation(None)
    assert max(Valuation(2), INFINITE) == INFINITE
    assert int(Valuation(5)) == 5
    with pytest.raises(ValueError):
        int(INFINITE)
    assert Valuation(2) + Valuation(3) == Valuation(5)
    assert Valuation(2) + INFINITE == INFINITE


def test_valp():
    assert valp(12, 2) == Valuation(2)
    assert valp(12, 3) == Valuation(1)
    assert valp(7, 3) == Valuation(0)
    assert valp(0, 5) == INFINITE
    assert valp(0, 5, cap=4) == Valuation(4)
    assert valp(5**10, 5, cap=3) == Valuation(3)
    assert valp(-18, 3) == Valuation(2)


def test_ctx_validation():
    ctx = PrimePowerCtx.create(3, 2)
    assert ctx.modulus == 9
    assert ctx.with_k(1).modulus == 3
    assert ctx.reduce(-1) == 8
    for bad in (0, 1, 4, 561):
        with pytest.raises(NotPrime):
            PrimePowerCtx.create(bad, 1)
    with pytest.raises(ValueError):
        PrimePowerCtx.create(3, 0)


def test_splitrng_deterministic():
    a = SplitRng(7).child("x", 1)
    b = SplitRng(7).child("x", 1)
    assert [a.next64() for _ in range(5)] == [b.next64() for _ in range(5)]


def test_splitrng_paths_differ():
    root = SplitRng(0)
    streams = {tuple(root.child(tag, i).next64() for _ in range(3)) for tag in ("a", "b") for i in range(4)}
    assert len(streams) == 8


def test_splitrng_covers_small_range():
    rng = SplitRng(11).child("cover")
    seen = {rng.randrange(5) for _ in range(200)}
    assert seen == {0, 1, 2, 3, 4}


@given(st.integers(min_value=1, max_value=10**9), st.integers(min_value=0, max_value=2**63))
def test_splitrng_randrange_bounds(n, seed):
    rng = SplitRng(seed)
    for _ in range(4):
        assert 0 <= rng.randrange(n) < n
