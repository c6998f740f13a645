import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ppcount.errors import InternalInvariantError, PrimeTooLarge, ZeroPolynomial
from ppcount.modarith import SplitRng, Valuation
from ppcount.oracle import brute_fp_roots
from ppcount.unipoly import (
    RootMethod,
    RootStats,
    UniPoly,
    add_constant,
    content_valuation,
    divide_exact,
    drop_constant,
    eval_mod,
    fp_derivative,
    fp_root_multiplicities,
    fp_roots,
    recenter,
    taylor_shift_p,
)


def test_make_trims_and_reduces():
    f = UniPoly.make((10, 3, 9, 0, 0), 9)
    assert f.coeffs == (1, 3)
    assert f.degree() == 1
    assert UniPoly.make((0, 0), 9).is_zero()
    assert UniPoly.zero(9).degree() is None
    assert UniPoly.make((5,), 9).degree() == 0


def test_eval_and_constant_helpers():
    f = UniPoly.make((1, 2, 3), 100)  # 3x^2 + 2x + 1
    assert eval_mod(f, 10, 100) == (300 + 20 + 1) % 100
    assert add_constant(f, 99).constant() == 0
    assert drop_constant(f).constant() == 0
    assert drop_constant(f).coeff(2) == 3


@given(
    st.lists(st.integers(min_value=-50, max_value=50), max_size=6),
    st.integers(min_value=-20, max_value=20),
)
def test_eval_matches_naive(coeffs, x):
    m = 101
    f = UniPoly.make(coeffs, m)
    naive = sum(c * x**i for i, c in enumerate(coeffs)) % m
    assert eval_mod(f, x, m) == naive


def test_recenter_hand_case():
    f = UniPoly.make((0, 0, 1), 27)  # x^2
    assert recenter(f, 1, 27).coeffs == (1, 2, 1)  # (1 + t)^2


def test_taylor_shift_hand_case():
    f = UniPoly.make((0, 0, 1), 27)
    assert taylor_shift_p(f, 1, 3, 27).coeffs == (1, 6, 9)  # (1 + 3t)^2


@given(
    st.lists(st.integers(min_value=-30, max_value=30), min_size=1, max_size=5),
    st.integers(min_value=0, max_value=26),
    st.integers(min_value=0, max_value=26),
)
def test_taylor_shift_is_evaluation(coeffs, zeta, t):
    m = 27
    f = UniPoly.make(coeffs, m)
    shifted = taylor_shift_p(f, zeta, 3, m)
    assert eval_mod(shifted, t, m) == eval_mod(f, (zeta + 3 * t) % m, m)


def test_content_and_exact_division():
    f = UniPoly.make((18, 9, 27), 81)
    assert content_valuation(f, 3, cap=4) == Valuation(2)
    g = divide_exact(f, 3, 2, 9)
    assert g.coeffs == (2, 1, 3)
    assert content_valuation(UniPoly.zero(81), 3, cap=4) == Valuation(4)
    with pytest.raises(InternalInvariantError):
        divide_exact(UniPoly.make((3, 1), 27), 3, 1, 9)


def test_fp_derivative():
    f = UniPoly.make((1, 2, 3, 4), 5)  # 4x^3 + 3x^2 + 2x + 1
    assert fp_derivative(f).coeffs == (2, 1, 2)  # 12x^2 + 6x + 2 mod 5
    assert fp_derivative(UniPoly.make((0, 0, 0, 0, 0, 1), 5)).is_zero()  # x^5


def _random_poly_coeffs(rnd, p, max_deg):
    deg = rnd.randrange(0, max_deg + 1)
    return tuple(rnd.randrange(p) for _ in range(deg + 1))


@pytest.mark.parametrize("p", [2, 3, 5, 7, 101, 1009])
def test_fp_roots_methods_agree_with_scan(p):
    rnd = random.Random(f"roots:{p}")
    rng = SplitRng(5)
    for i in range(25):
        coeffs = _random_poly_coeffs(rnd, p, 8)
        f = UniPoly.make(coeffs, p)
        if f.is_zero():
            continue
        expected = brute_fp_roots(coeffs, p)
        assert fp_roots(f, method=RootMethod.BRUTE) == expected
        assert fp_roots(f, method=RootMethod.CZ, rng=rng.child("cz", i)) == expected
        assert fp_roots(f, method=RootMethod.AUTO, rng=rng.child("auto", i)) == expected


def test_fp_roots_edge_cases():
    with pytest.raises(ZeroPolynomial):
        fp_roots(UniPoly.zero(5))
    assert fp_roots(UniPoly.make((3,), 5)) == set()
    assert fp_roots(UniPoly.make((0, 1), 2), method=RootMethod.CZ, rng=SplitRng(0)) == {0}
    with pytest.raises(PrimeTooLarge):
        fp_roots(UniPoly.make((0, 1), 2**31 + 11), method=RootMethod.BRUTE)


def test_root_multiplicities_product_form():
    p = 7
    # (x - 1)^2 (x - 3), built by explicit convolution.
    factors = [(-1, 1), (-1, 1), (-3, 1)]
    coeffs = [1]
    for fac in factors:
        out = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            for j, d in enumerate(fac):
                out[i + j] = (out[i + j] + c * d) % p
        coeffs = out
    profile = fp_root_multiplicities(UniPoly.make(coeffs, p), rng=SplitRng(1))
    assert profile.entries == {1: 2, 3: 1}
    assert profile.degenerate_roots() == [1]
    assert profile.nondegenerate_count() == 1


def test_root_stats_counter_is_tracked():
    stats = RootStats()
    rng = SplitRng(3)
    for i in range(10):
        f = UniPoly.make((i % 7, 3, 1, 5, 1), 7)
        if not f.is_zero():
            fp_roots(f, method=RootMethod.CZ, rng=rng.child(i), stats=stats)
    assert stats.retries >= 0
