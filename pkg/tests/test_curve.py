import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import build
from ppcount.curve import (
    AllCurvePoints,
    Axis,
    HorizontalLines,
    IsolatedPoints,
    SeparatedCurve,
    VerticalLines,
    curve_content,
    divide_content,
    hensel_lifts,
    line_branch_axis,
    line_univariate_bar,
    line_valuation,
    multiplicity_at,
    normalize,
    perturb_line,
    perturb_point,
    point_valuation,
    singular_locus,
)
from ppcount.errors import (
    BranchMismatch,
    ConstantReduction,
    InternalInvariantError,
    NotARoot,
    NotSmooth,
    ValuationOutOfRange,
    ZeroReduction,
)
from ppcount.modarith import PrimePowerCtx, SplitRng, Valuation
from ppcount.oracle import brute_fp_points, brute_multiplicity
from ppcount.unipoly import (
    UniPoly,
    add_constant,
    content_valuation,
    drop_constant,
    eval_mod,
    fp_derivative,
    taylor_shift_p,
)


def test_normalize_moves_constant_into_g():
    c = build(5, 2, (1, 1), (7, 0, 1))
    assert c.h.constant() == 0
    assert c.g.constant() == 8
    assert c.evaluate(0, 0, 25) == 8


def test_curve_rejects_unnormalized_h():
    ctx = PrimePowerCtx.create(5, 2)
    with pytest.raises(InternalInvariantError):
        SeparatedCurve(UniPoly.make((1,), 25), UniPoly.make((3, 1), 25), ctx)


def test_degree_and_reduce_to():
    c = build(3, 3, (0, 0, 0, 1), (0, 5))
    assert c.degree() == 3
    low = c.reduce_to(PrimePowerCtx.create(3, 1))
    assert low.ctx.modulus == 3
    assert low.h.coeffs == (0, 2)
    with pytest.raises(ValueError):
        low.reduce_to(PrimePowerCtx.create(3, 2))
    with pytest.raises(ValueError):
        c.reduce_to(PrimePowerCtx.create(5, 1))


def test_content_and_division():
    c = build(2, 4, (4, 8), (0, 12))
    assert curve_content(c, cap=4) == 2
    d = divide_content(c, 2, 2)
    assert d.ctx.modulus == 4
    assert d.g.coeffs == (1, 2)
    assert d.h.coeffs == (0, 3)
    assert curve_content(build(3, 2, (), ()), cap=2) == 2  # zero curve caps out


# ---------------------------------------------------------------------------
# Singular locus shapes.
# ---------------------------------------------------------------------------


def test_locus_isolated_points():
    # (x1 - 1)^2 + (x2 - 2)^2 over F_7.
    c = build(7, 1, (1, -2, 1), (4, -4, 1))
    locus = singular_locus(c, rng=SplitRng(0))
    assert locus == IsolatedPoints(((1, 2),))


def test_locus_isolated_requires_curve_membership():
    # x1^2 + x2^2 + 1 mod 3: critical point (0, 0) is not on the curve.
    c = build(3, 1, (1, 0, 1), (0, 0, 1))
    assert singular_locus(c, rng=SplitRng(0)) == IsolatedPoints(())


def test_locus_vertical_lines():
    c = build(3, 2, (0, 0, 1), (0, -3))  # x1^2 - 3 x2
    assert line_branch_axis(c) == Axis.X1
    assert singular_locus(c, rng=SplitRng(0)) == VerticalLines((0,))
    assert line_univariate_bar(c).coeffs == (0, 0, 1)


def test_locus_horizontal_lines():
    c = build(3, 2, (1, 3), (0, 0, 0, 2))  # 3 x1 + 2 x2^3 + 1
    assert line_branch_axis(c) == Axis.X2
    locus = singular_locus(c, rng=SplitRng(0))
    assert isinstance(locus, HorizontalLines)
    # Roots of 2 b^3 + 1 = 0 mod 3: b = 1 with multiplicity 3.
    assert locus.x2_values == (1,)


def test_locus_all_points_degenerate():
    c = build(3, 4, (3, 0, 0, 1), (0, 0, 0, 1))  # x1^3 + x2^3 + 3
    assert isinstance(singular_locus(c, rng=SplitRng(0)), AllCurvePoints)


def test_locus_rejects_zero_and_constant_reductions():
    with pytest.raises(ZeroReduction):
        singular_locus(build(3, 2, (3, 3), (0, 6)), rng=SplitRng(0))
    with pytest.raises(ConstantReduction):
        singular_locus(build(3, 2, (1, 3), (0, 3)), rng=SplitRng(0))


def test_locus_one_sided_derivative_vanishing():
    # g = x1^3 mod 3 has zero derivative; h = x2^2 does not. Singular points
    # need h'(b) = 0, so b = 0 and a^3 = 0, giving (0, 0) only.
    c = build(3, 1, (0, 0, 0, 1), (0, 0, 1))
    assert singular_locus(c, rng=SplitRng(0)) == IsolatedPoints(((0, 0),))


# ---------------------------------------------------------------------------
# Multiplicity and valuations.
# ---------------------------------------------------------------------------


def test_multiplicity_matches_oracle_on_random_curves():
    rnd = random.Random("mult")
    for p in (2, 3, 5):
        for _ in range(15):
            g = tuple(rnd.randrange(p) for _ in range(rnd.randrange(1, 5)))
            h = tuple(rnd.randrange(p) for _ in range(rnd.randrange(1, 5)))
            c = build(p, 1, g, h)
            if c.g.is_zero() and c.h.is_zero():
                continue  # constants can cancel in normalize, e.g. 1 + 1 mod 2
            for zeta in brute_fp_points(g, h, p):
                assert multiplicity_at(c, zeta) == brute_multiplicity(g, h, p, zeta)
            assert multiplicity_at(c, (0, 0)) == brute_multiplicity(g, h, p, (0, 0))


def test_point_valuation_hand_cases():
    c = build(3, 2, (0, 0, 1), (0, 0, 1))  # x1^2 + x2^2
    assert point_valuation(c, (0, 0), cap=2) == Valuation(2)
    c2 = build(5, 2, (0, 0, 0, -1), (0, 0, 1))  # x2^2 - x1^3
    assert point_valuation(c2, (0, 0), cap=2) == Valuation(2)
    assert point_valuation(c2, (1, 1), cap=2) == Valuation(1)  # smooth point


@given(
    st.integers(min_value=0, max_value=26),
    st.integers(min_value=0, max_value=26),
    st.lists(st.integers(min_value=-26, max_value=26), min_size=1, max_size=4),
    st.lists(st.integers(min_value=-26, max_value=26), max_size=4),
)
def test_point_valuation_is_content_of_recentred_curve(a, b, g, h):
    # s(f, zeta) should equal the p-content of f(zeta + p x), computed here
    # the slow way through taylor_shift_p on both parts.
    p, k = 3, 3
    c = build(p, k, tuple(g), tuple(h))
    sg = taylor_shift_p(c.g, a % 27, p, 27)
    sh = taylor_shift_p(c.h, b % 27, p, 27)
    merged = add_constant(sg, sh.constant())
    v = min(
        content_valuation(merged, p, cap=k).value,
        content_valuation(drop_constant(sh), p, cap=k).value,
    )
    assert point_valuation(c, (a, b), cap=k) == Valuation(v)


def test_line_valuation_hand_case():
    c = build(3, 2, (0, 0, 1), (0, -3))  # x1^2 - 3 x2
    assert line_valuation(c, Axis.X1, 0, cap=2) == Valuation(1)
    with pytest.raises(BranchMismatch):
        line_valuation(c, Axis.X2, 0, cap=2)


def test_line_valuation_pure_univariate():
    # h identically zero: the off-axis content never binds.
    c = build(3, 3, (0, 0, 0, 1), ())  # x1^3, so g(3t) = 27 t^3 = 0 mod 27
    assert line_valuation(c, Axis.X1, 0, cap=3) == Valuation(3)
    c2 = build(3, 3, (0, 0, 1), ())  # x1^2, g(3t) = 9 t^2 has content 2
    assert line_valuation(c2, Axis.X1, 0, cap=3) == Valuation(2)


# ---------------------------------------------------------------------------
# Perturbations.
# ---------------------------------------------------------------------------


def test_perturb_point_hand_case():
    c = build(3, 2, (0, 0, 1), (0, 0, 1))
    with pytest.raises(ValuationOutOfRange):
        perturb_point(c, (0, 0), 2)  # s = 2 = k, saturated
    c3 = build(3, 3, (0, 0, 1), (0, 0, 1))
    child, k_child, s = perturb_point(c3, (0, 0), 3)
    assert (k_child, s) == (1, 2)
    assert child.g.coeffs == (0, 0, 1)
    assert child.h.coeffs == (0, 0, 1)


@given(
    st.integers(min_value=0, max_value=2),
    st.integers(min_value=0, max_value=2),
    st.integers(min_value=0, max_value=8),
    st.integers(min_value=0, max_value=8),
)
def test_perturb_point_is_division_pointwise(a, b, t1, t2):
    # Build a curve with a forced deep point at (a, b):
    # f = (x1 - a)^2 * 3 + (x2 - b)^3 has s >= 2 there.
    p, k = 3, 4
    m = p**k
    g = (3 * a * a % m, (-6 * a) % m, 3)
    h = ((-b) ** 3 % m, 3 * b * b % m, (-3 * b) % m, 1)
    c = build(p, k, g, h)
    s = point_valuation(c, (a, b), cap=k).value
    if not 2 <= s <= k - 1:
        return
    child, k_child, _ = perturb_point(c, (a, b), k)
    lhs = c.evaluate(a + p * t1, b + p * t2, m)
    rhs = p**s * child.evaluate(t1, t2, p**k_child)
    assert (lhs - rhs) % (p ** (s + k_child)) == 0


def test_perturb_line_x1_hand_case():
    c = build(3, 2, (0, 0, 1), (0, -3))
    child, k_child, s = perturb_line(c, Axis.X1, 0, 2)
    assert (k_child, s) == (1, 1)
    # (9 x1^2 - 3 x2) / 3 = 3 x1^2 - x2, which is -x2 mod 3.
    assert child.g.is_zero()
    assert child.h.coeffs == (0, 2)


def test_perturb_line_x2_merges_constant():
    # g constant mod p: 1 + 5 x1^2, h = x2^2 - 2 x2; the combined univariate
    # (x2 - 1)^2 has a degenerate root at 1, and the shifted constant must be
    # divided together with the x2 part.
    c = build(5, 3, (1, 0, 5), (0, -2, 1))
    assert line_branch_axis(c) == Axis.X2
    m = 125
    tested = 0
    for z2 in range(5):
        s = line_valuation(c, Axis.X2, z2, cap=3).value
        if not 1 <= s <= 2:
            continue
        tested += 1
        child, k_child, _ = perturb_line(c, Axis.X2, z2, 3)
        for x1 in range(6):
            for t in range(6):
                lhs = c.evaluate(x1, z2 + 5 * t, m)
                rhs = 5**s * child.evaluate(x1, t, 5**k_child)
                assert (lhs - rhs) % (5 ** (s + k_child)) == 0
    assert tested == 1  # exactly the degenerate root z2 = 1


def test_perturb_line_range_check():
    c = build(3, 2, (0, 0, 0, 1), ())  # g(3t) = 27 t^3, valuation saturates at k
    with pytest.raises(ValuationOutOfRange):
        perturb_line(c, Axis.X1, 0, 2)
    with pytest.raises(ValuationOutOfRange):
        perturb_line(c, Axis.X1, 1, 2)  # 1 is not even a root mod 3


# ---------------------------------------------------------------------------
# Hensel lifting.
# ---------------------------------------------------------------------------


def test_hensel_hand_case():
    c = build(5, 2, (0, 0, 0, -1), (0, 0, 1))
    lifted = hensel_lifts(c, (1, 1), 1)
    assert lifted.lifts == ((1, 1), (6, 21), (11, 16), (16, 11), (21, 6))


def test_hensel_lift_count_and_membership():
    rnd = random.Random("hensel")
    p, k = 7, 3
    m = p**k
    for _ in range(10):
        g = tuple(rnd.randrange(m) for _ in range(4))
        h = tuple(rnd.randrange(m) for _ in range(3))
        c = build(p, k, g, h)
        gbar, hbar = c.reduced_parts()
        if gbar.is_zero() and hbar.is_zero():
            continue
        for a, b in brute_fp_points(tuple(c.g.coeffs), tuple(c.h.coeffs), p):
            smooth = (
                eval_mod(fp_derivative(gbar), a, p) != 0
                or eval_mod(fp_derivative(hbar), b, p) != 0
            )
            if not smooth:
                continue
            lifted = hensel_lifts(c, (a, b), 1)
            assert len(lifted.lifts) == p
            assert len(set(lifted.lifts)) == p
            for x1, x2 in lifted.lifts:
                assert c.evaluate(x1, x2, p**2) == 0


def test_hensel_rejects_bad_points():
    c = build(5, 2, (0, 0, 0, -1), (0, 0, 1))
    with pytest.raises(NotSmooth):
        hensel_lifts(c, (0, 0), 1)
    with pytest.raises(NotARoot):
        hensel_lifts(c, (2, 1), 1)
    with pytest.raises(ValueError):
        hensel_lifts(c, (1, 1), 2)  # needs coefficients mod p^3
