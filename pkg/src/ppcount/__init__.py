"""Exact root counts of separated polynomials g(x1) + h(x2) over Z/p^k."""

from ppcount import errors
from ppcount.counter import (
    AuditReport,
    AuditViolation,
    Branch,
    CountConfig,
    CountResult,
    CountStats,
    EdgeIn,
    LocusRef,
    TreeNode,
    build_tree,
    count_points,
    poincare_prefix,
    tree_audit,
    tree_to_dot,
    tree_to_json,
)
from ppcount.curve import (
    AllCurvePoints,
    Axis,
    HorizontalLines,
    IsolatedPoints,
    LiftSet,
    SeparatedCurve,
    VerticalLines,
    curve_content,
    divide_content,
    hensel_lifts,
    line_valuation,
    multiplicity_at,
    normalize,
    perturb_line,
    perturb_point,
    point_valuation,
    singular_locus,
)
from ppcount.fpcount import (
    ValueHistogram,
    fp_point_count,
    fp_smooth_count,
    value_histogram,
)
from ppcount.modarith import INFINITE, PrimePowerCtx, SplitRng, Valuation, is_prime, valp
from ppcount.parse import PolyExpr, build_curve, curve_from_text, parse_poly, pretty
from ppcount.unipoly import (
    RootMethod,
    RootProfile,
    RootStats,
    UniPoly,
    fp_root_multiplicities,
    fp_roots,
)

__version__ = "0.1.0"

__all__ = [
    "AllCurvePoints",
    "AuditReport",
    "AuditViolation",
    "Axis",
    "Branch",
    "CountConfig",
    "CountResult",
    "CountStats",
    "EdgeIn",
    "HorizontalLines",
    "INFINITE",
    "IsolatedPoints",
    "LiftSet",
    "LocusRef",
    "PolyExpr",
    "PrimePowerCtx",
    "RootMethod",
    "RootProfile",
    "RootStats",
    "SeparatedCurve",
    "SplitRng",
    "TreeNode",
    "UniPoly",
    "Valuation",
    "ValueHistogram",
    "VerticalLines",
    "build_curve",
    "build_tree",
    "count_points",
    "curve_content",
    "curve_from_text",
    "divide_content",
    "errors",
    "fp_point_count",
    "fp_root_multiplicities",
    "fp_roots",
    "fp_smooth_count",
    "hensel_lifts",
    "is_prime",
    "line_valuation",
    "multiplicity_at",
    "normalize",
    "parse_poly",
    "perturb_line",
    "perturb_point",
    "poincare_prefix",
    "point_valuation",
    "pretty",
    "singular_locus",
    "tree_audit",
    "tree_to_dot",
    "tree_to_json",
    "valp",
    "value_histogram",
]
