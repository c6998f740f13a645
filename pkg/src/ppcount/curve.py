"""Separated curves f = g(x1) + h(x2) over Z/p^k.

Normalization keeps the constant term in g, so h(0) = 0 always; without this
the mod-p analysis below would misclassify reductions such as x1^2 + 1 over
F_2, which is the square (x1 + 1)^2 even though x1^2 is squarefree.

Because mixed Hasse derivatives of a separated polynomial vanish, everything
local decomposes per axis: the multiplicity at (a, b) is the smaller of the
recentred orders of g at a and h at b, and the point valuation

    s(f, zeta) = content of f(a + p x1, b + p x2)
               = min( ord(g(a) + h(b)),
                      min_{j>=1} j + ord of coeff j of g(a + x),
                      min_{j>=1} j + ord of coeff j of h(b + x) ).

The two perturbation maps extract p^s from the recentred curve and are the
edges of the counting recursion; Hensel lifting handles the smooth points.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

from ppcount.errors import (
    BranchMismatch,
    ConstantReduction,
    InternalInvariantError,
    NotARoot,
    NotSmooth,
    ValuationOutOfRange,
    ZeroReduction,
)
from ppcount.modarith import PrimePowerCtx, SplitRng, Valuation, valp
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


class Axis(Enum):
    X1 = "x1"
    X2 = "x2"


@dataclass(frozen=True)
class SeparatedCurve:
    """g(x1) + h(x2) with coefficients in Z/p^k; h has no constant term."""

    g: UniPoly
    h: UniPoly
    ctx: PrimePowerCtx

    def __post_init__(self):
        m = self.ctx.modulus
        if self.g.modulus != m or self.h.modulus != m:
            raise InternalInvariantError("curve parts must live in the ring of ctx")
        if self.h.constant() != 0:
            raise InternalInvariantError("normalization requires h(0) = 0")

    def degree(self) -> int | None:
        """Total degree over Z/p^k; None when every coefficient vanishes."""
        dg, dh = self.g.degree(), self.h.degree()
        if dg is None and dh is None:
            return None
        return max(dg or 0, dh or 0)

    def reduced_parts(self) -> tuple[UniPoly, UniPoly]:
        """(g mod p, h mod p)."""
        p = self.ctx.p
        return self.g.reduce_mod(p), self.h.reduce_mod(p)

    def evaluate(self, a: int, b: int, m: int) -> int:
        return (eval_mod(self.g, a, m) + eval_mod(self.h, b, m)) % m

    def reduce_to(self, ctx: PrimePowerCtx) -> "SeparatedCurve":
        if ctx.p != self.ctx.p:
            raise ValueError("cannot reduce to a different prime")
        if ctx.k > self.ctx.k:
            raise ValueError("cannot lift to a higher precision than the curve carries")
        if ctx.k == self.ctx.k:
            return self
        m = ctx.modulus
        return SeparatedCurve(self.g.reduce_mod(m), self.h.reduce_mod(m), ctx)


def normalize(g: UniPoly, h: UniPoly, ctx: PrimePowerCtx) -> SeparatedCurve:
    """Reduce both parts mod p^k and move h's constant term into g."""
    m = ctx.modulus
    g = g.reduce_mod(m)
    h = h.reduce_mod(m)
    if h.constant() != 0:
        g = add_constant(g, h.constant())
        h = drop_constant(h)
    return SeparatedCurve(g, h, ctx)


def curve_content(curve: SeparatedCurve, cap: int) -> int:
    """Content valuation of the whole curve, capped."""
    p = curve.ctx.p
    vg = content_valuation(curve.g, p, cap).value
    vh = content_valuation(curve.h, p, cap).value
    return min(vg, vh)


def divide_content(curve: SeparatedCurve, v: int, new_k: int) -> SeparatedCurve:
    """curve / p^v in Z/p^new_k; every coefficient must carry the factor."""
    p = curve.ctx.p
    m = p**new_k
    return SeparatedCurve(
        divide_exact(curve.g, p, v, m),
        divide_exact(curve.h, p, v, m),
        curve.ctx.with_k(new_k),
    )


# ---------------------------------------------------------------------------
# Singular locus of the mod-p reduction.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IsolatedPoints:
    """Finitely many singular points of a squarefree reduction."""

    points: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class VerticalLines:
    """Lines {a} x F_p at degenerate roots a of the x1 reduction."""

    x1_values: tuple[int, ...]


@dataclass(frozen=True)
class HorizontalLines:
    """Lines F_p x {b} at degenerate roots b of the x2 reduction."""

    x2_values: tuple[int, ...]


@dataclass(frozen=True)
class AllCurvePoints:
    """Every F_p point of the reduction is singular (both derivatives vanish)."""


SingularLocus = Union[IsolatedPoints, VerticalLines, HorizontalLines, AllCurvePoints]


def locus_is_empty(locus: SingularLocus) -> bool:
    if isinstance(locus, IsolatedPoints):
        return not locus.points
    if isinstance(locus, VerticalLines):
        return not locus.x1_values
    if isinstance(locus, HorizontalLines):
        return not locus.x2_values
    return False


def _axis_univariate_bar(gbar: UniPoly, hbar: UniPoly, axis: Axis) -> UniPoly:
    # On the x2 axis the constant term of g joins h, since the reduction is
    # g(0) + h(x2) there.
    if axis == Axis.X1:
        return gbar
    return add_constant(hbar, gbar.constant())


def line_branch_axis(curve: SeparatedCurve) -> Axis | None:
    """Which axis the line branch applies on, or None for a genuine curve."""
    gbar, hbar = curve.reduced_parts()
    g_nonconst = gbar.degree() not in (None, 0)
    h_nonzero = not hbar.is_zero()
    if g_nonconst and not h_nonzero:
        return Axis.X1
    if not g_nonconst and h_nonzero:
        return Axis.X2
    return None


def line_univariate_bar(curve: SeparatedCurve) -> UniPoly:
    """Mod-p univariate governing a line-branch curve, constant included."""
    axis = line_branch_axis(curve)
    if axis is None:
        raise BranchMismatch("curve is not in a line branch")
    gbar, hbar = curve.reduced_parts()
    return _axis_univariate_bar(gbar, hbar, axis)


def singular_locus(
    curve: SeparatedCurve,
    rng: SplitRng | None = None,
    method: RootMethod = RootMethod.AUTO,
    stats: RootStats | None = None,
) -> SingularLocus:
    """Singular locus of the mod-p reduction, in one of four shapes.

    Both parts nonconstant: isolated points (a, b) with both derivatives and
    the value vanishing, unless both derivatives vanish identically, in which
    case every curve point is singular. One part constant mod p: vertical or
    horizontal lines at the degenerate roots of the surviving univariate.
    """
    rng = rng or SplitRng(0)
    p = curve.ctx.p
    gbar, hbar = curve.reduced_parts()
    if gbar.is_zero() and hbar.is_zero():
        raise ZeroReduction("curve vanishes mod p")

    axis = line_branch_axis(curve)
    if axis == Axis.X1:
        profile = fp_root_multiplicities(gbar, method=method, rng=rng.child("vprof"), stats=stats)
        return VerticalLines(tuple(profile.degenerate_roots()))
    if axis == Axis.X2:
        univ = _axis_univariate_bar(gbar, hbar, Axis.X2)
        if univ.degree() in (None, 0):
            raise ConstantReduction("curve reduces to a nonzero constant mod p")
        profile = fp_root_multiplicities(univ, method=method, rng=rng.child("hprof"), stats=stats)
        return HorizontalLines(tuple(profile.degenerate_roots()))
    if gbar.degree() in (None, 0) and hbar.is_zero():
        raise ConstantReduction("curve reduces to a nonzero constant mod p")

    dg = fp_derivative(gbar)
    dh = fp_derivative(hbar)
    if dg.is_zero() and dh.is_zero():
        return AllCurvePoints()

    points: list[tuple[int, int]] = []
    if not dg.is_zero() and not dh.is_zero():
        roots_a = fp_roots(dg, method=method, rng=rng.child("dg"), stats=stats)
        roots_b = fp_roots(dh, method=method, rng=rng.child("dh"), stats=stats)
        for a in sorted(roots_a):
            va = eval_mod(gbar, a, p)
            for b in sorted(roots_b):
                if (va + eval_mod(hbar, b, p)) % p == 0:
                    points.append((a, b))
    elif dg.is_zero():
        # Critical x1 values are everywhere; solve g(a) = -h(b) per critical b.
        for b in sorted(fp_roots(dh, method=method, rng=rng.child("dh"), stats=stats)):
            w = add_constant(gbar, eval_mod(hbar, b, p))
            for a in sorted(fp_roots(w, method=method, rng=rng.child("ga", b), stats=stats)):
                points.append((a, b))
    else:
        for a in sorted(fp_roots(dg, method=method, rng=rng.child("dg"), stats=stats)):
            w = add_constant(hbar, eval_mod(gbar, a, p))
            for b in sorted(fp_roots(w, method=method, rng=rng.child("hb", a), stats=stats)):
                points.append((a, b))
    return IsolatedPoints(tuple(sorted(points)))


# ---------------------------------------------------------------------------
# Local invariants: multiplicity and valuations.
# ---------------------------------------------------------------------------


def multiplicity_at(curve: SeparatedCurve, zeta: tuple[int, int]) -> int:
    """Multiplicity of the mod-p reduction at zeta; 0 iff zeta is off the curve."""
    p = curve.ctx.p
    gbar, hbar = curve.reduced_parts()
    if gbar.is_zero() and hbar.is_zero():
        raise ZeroReduction("curve vanishes mod p")
    a, b = zeta[0] % p, zeta[1] % p
    if (eval_mod(gbar, a, p) + eval_mod(hbar, b, p)) % p != 0:
        return 0
    best: int | None = None
    for part, center in ((gbar, a), (hbar, b)):
        rec = recenter(part, center, p)
        for j in range(1, len(rec.coeffs)):
            if rec.coeffs[j]:
                if best is None or j < best:
                    best = j
                break
    if best is None:
        # On the curve with no variable terms mod p would make the reduction
        # the zero constant, excluded above.
        raise InternalInvariantError("constant reduction reached multiplicity search")
    return best


def point_valuation(curve: SeparatedCurve, zeta: tuple[int, int], cap: int) -> Valuation:
    """s(f, zeta) capped: the content of f(zeta + p x), never more than cap."""
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    p = curve.ctx.p
    m = curve.ctx.modulus
    a, b = zeta[0] % m, zeta[1] % m
    best = valp(curve.evaluate(a, b, m), p, cap=cap).value
    for part, center in ((curve.g, a), (curve.h, b)):
        if best <= 1:
            break
        rec = recenter(part, center, m)
        for j in range(1, len(rec.coeffs)):
            if j >= best:
                break  # v >= j, cannot improve on best
            v = j + valp(rec.coeffs[j], p, cap=best - j).value
            if v < best:
                best = v
    return Valuation(min(best, cap))


def _offaxis_content(curve: SeparatedCurve, axis: Axis, cap: int) -> int:
    p = curve.ctx.p
    off = curve.h if axis == Axis.X1 else drop_constant(curve.g)
    return content_valuation(off, p, cap).value


def line_valuation(curve: SeparatedCurve, axis: Axis, zeta1: int, cap: int) -> Valuation:
    """Valuation of the line {x_axis = zeta1 + p Z} on a line-branch curve.

    This is min(content of U(zeta1 + p x), c) where U is the on-axis
    univariate carrying the constant term and c the content of the other part.
    """
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    if line_branch_axis(curve) != axis:
        raise BranchMismatch(f"line branch does not apply on axis {axis.value}")
    p = curve.ctx.p
    m = curve.ctx.modulus
    c = _offaxis_content(curve, axis, cap)
    if axis == Axis.X1:
        univ = curve.g
    else:
        univ = add_constant(curve.h, curve.g.constant())
    shifted = taylor_shift_p(univ, zeta1 % m, p, m)
    s = min(content_valuation(shifted, p, cap).value, c)
    return Valuation(min(s, cap))


# ---------------------------------------------------------------------------
# Perturbations: the edges of the counting recursion.
# ---------------------------------------------------------------------------


def perturb_point(
    curve: SeparatedCurve, zeta: tuple[int, int], k_i: int
) -> tuple[SeparatedCurve, int, int]:
    """f(zeta + p x) / p^s at precision k_i - s, for a singular point zeta.

    Returns (child curve, child precision, s). Only 2 <= s <= k_i - 1 makes a
    child; saturated points (s >= k_i) and non-lifting ones (s = 1) are the
    caller's business.
    """
    if k_i > curve.ctx.k:
        raise ValueError("k_i exceeds the curve's precision")
    p = curve.ctx.p
    m = p**k_i
    s = point_valuation(curve, zeta, cap=k_i).value
    if not 2 <= s <= k_i - 1:
        raise ValuationOutOfRange(f"point valuation {s} outside {{2, ..., {k_i - 1}}}")
    k_child = k_i - s
    m_child = p**k_child
    a, b = zeta[0] % m, zeta[1] % m
    shift_g = taylor_shift_p(curve.g, a, p, m)
    shift_h = taylor_shift_p(curve.h, b, p, m)
    # p^s divides the combined constant g(a) + h(b), not each half alone,
    # so merge the constants before dividing.
    combined = add_constant(shift_g, shift_h.constant())
    child_g = divide_exact(combined, p, s, m_child)
    child_h = divide_exact(drop_constant(shift_h), p, s, m_child)
    child = SeparatedCurve(child_g, child_h, curve.ctx.with_k(k_child))
    return child, k_child, s


def perturb_line(
    curve: SeparatedCurve, axis: Axis, zeta1: int, k_i: int
) -> tuple[SeparatedCurve, int, int]:
    """Perturb along one axis only: on X1 this is (g(zeta1 + p x1) + h(x2)) / p^s.

    Returns (child curve, child precision, s) with 1 <= s <= k_i - 1 enforced.
    """
    if k_i > curve.ctx.k:
        raise ValueError("k_i exceeds the curve's precision")
    p = curve.ctx.p
    m = p**k_i
    s = line_valuation(curve, axis, zeta1, cap=k_i).value
    if not 1 <= s <= k_i - 1:
        raise ValuationOutOfRange(f"line valuation {s} outside {{1, ..., {k_i - 1}}}")
    k_child = k_i - s
    m_child = p**k_child
    zeta1 %= m
    if axis == Axis.X1:
        shifted = taylor_shift_p(curve.g, zeta1, p, m)
        child_g = divide_exact(shifted, p, s, m_child)
        child_h = divide_exact(curve.h, p, s, m_child)
    else:
        univ = add_constant(curve.h, curve.g.constant())
        shifted = taylor_shift_p(univ, zeta1, p, m)
        shifted_div = divide_exact(shifted, p, s, m_child)
        off = divide_exact(drop_constant(curve.g), p, s, m_child)
        child_g = add_constant(off, shifted_div.constant())
        child_h = drop_constant(shifted_div)
    child = SeparatedCurve(child_g, child_h, curve.ctx.with_k(k_child))
    return child, k_child, s


# ---------------------------------------------------------------------------
# Hensel lifting at smooth points.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LiftSet:
    """The p lifts of a smooth root sigma mod p^j to roots mod p^(j+1)."""

    base: tuple[int, int]
    j: int
    lifts: tuple[tuple[int, int], ...]


def hensel_lifts(curve: SeparatedCurve, sigma: tuple[int, int], j: int) -> LiftSet:
    """All roots mod p^(j+1) above a root sigma mod p^j that is smooth mod p.

    They are sigma + p^j t for the p solutions t of
    g'(sigma1) t1 + h'(sigma2) t2 = -f(sigma) / p^j over F_p.
    """
    p = curve.ctx.p
    if j < 1:
        raise ValueError(f"j must be >= 1, got {j}")
    if j + 1 > curve.ctx.k:
        raise ValueError("lifting needs coefficients mod p^(j+1)")
    pj = p**j
    pj1 = pj * p
    s1, s2 = sigma[0] % pj, sigma[1] % pj
    gbar, hbar = curve.reduced_parts()
    a_coef = eval_mod(fp_derivative(gbar), s1 % p, p)
    b_coef = eval_mod(fp_derivative(hbar), s2 % p, p)
    if a_coef == 0 and b_coef == 0:
        raise NotSmooth(f"both partial derivatives vanish mod {p} at {(s1, s2)}")
    value = curve.evaluate(s1, s2, pj1)
    if value % pj:
        raise NotARoot(f"{(s1, s2)} is not a root mod {p}^{j}")
    rhs = -(value // pj) % p
    lifts = []
    if b_coef != 0:
        inv = pow(b_coef, -1, p)
        for t1 in range(p):
            t2 = (rhs - a_coef * t1) * inv % p
            lifts.append((s1 + pj * t1, s2 + pj * t2))
    else:
        inv = pow(a_coef, -1, p)
        for t2 in range(p):
            t1 = (rhs - b_coef * t2) * inv % p
            lifts.append((s1 + pj * t1, s2 + pj * t2))
    return LiftSet(base=(s1, s2), j=j, lifts=tuple(sorted(lifts)))
