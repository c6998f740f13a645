"""Exact root counts over Z/p^k via recursion over perturbations.

The count of a curve splits into three parts. Smooth points of the mod-p
reduction lift freely (p^(k-1) roots each). A singular point or degenerate
line whose valuation s reaches the working precision saturates: every
candidate above it is a root. In between, perturbing and dividing out p^s
yields a smaller instance at precision k - s, weighted by the lattice volume
of the candidates folded away:

    points  f(zeta + p y) = p^s child(y)   weight p^(2(s-1)), s in {2..k-1}
    lines   f(z1 + p t, x2) = p^s child    weight p^(2s-1),   s in {1..k-1}

Every evaluation is recorded in a tree; TreeNode.fold replays the arithmetic
from the stored integers, so the tree is an independently checkable
certificate of the returned count.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from time import perf_counter
from typing import Optional

from ppcount.curve import (
    AllCurvePoints,
    Axis,
    SeparatedCurve,
    curve_content,
    divide_content,
    line_branch_axis,
    line_univariate_bar,
    line_valuation,
    perturb_line,
    perturb_point,
    point_valuation,
    singular_locus,
)
from ppcount.errors import NodeBudgetExceeded
from ppcount.fpcount import (
    DEFAULT_PRIME_CEILING,
    fp_curve_points,
    fp_point_count,
)
from ppcount.modarith import PrimePowerCtx, SplitRng
from ppcount.unipoly import RootMethod, RootStats, fp_root_multiplicities


class Branch(str, Enum):
    """How a node's reduction mod p was classified after content removal."""

    BASE = "base"  # k = 1, counted directly over F_p
    SQUAREFREE = "squarefree"  # genuine curve, isolated singular points
    LINE_X1 = "line_x1"  # reduction depends on x1 only
    LINE_X2 = "line_x2"  # reduction depends on x2 only
    DEGENERATE_FALLBACK = "degenerate_fallback"  # every curve point singular
    ZERO = "zero"  # content >= k, everything is a root
    CONSTANT = "constant"  # nonzero constant mod p, nothing is a root


@dataclass(frozen=True)
class LocusRef:
    """Where a child or saturated term sits: a point (a, b) or a line value."""

    kind: str  # "point" | "line_x1" | "line_x2"
    coords: tuple[int, ...]


@dataclass(frozen=True)
class EdgeIn:
    locus: LocusRef
    s: int
    weight_exponent: int  # the child count enters scaled by p^weight_exponent


@dataclass
class TreeNode:
    """One recursion instance.

    k is the precision on entry; content_shift the p-power divided out first,
    so curve (the instance actually classified) lives at k - content_shift.
    A ZERO node records content_shift = k over the one-point ring, where the
    empty curve has exactly one root. direct_term is the node's own
    contribution: the full F_p count at the base, the smooth-point term
    p^(k-1) * n_smooth (lines: p^k * n_simple) above it. fold() rebuilds the
    count from these stored integers alone.
    """

    depth: int
    k: int
    curve: SeparatedCurve
    branch: Branch
    content_shift: int
    direct_term: int
    fbar_degree: Optional[int]
    id: int = -1
    edge_in: Optional[EdgeIn] = None
    saturated: list[tuple[LocusRef, int]] = field(default_factory=list)
    children: list["TreeNode"] = field(default_factory=list)

    def inner_k(self) -> int:
        return self.k - self.content_shift

    def fold(self, p: int) -> int:
        total = self.direct_term
        for _, exponent in self.saturated:
            total += p**exponent
        for child in self.children:
            total += p ** child.edge_in.weight_exponent * child.fold(p)
        return p ** (2 * self.content_shift) * total

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass
class CountStats:
    nodes: int = 0
    fp_scans: int = 0  # histogram or point-enumeration passes over F_p
    root_retries: int = 0  # failed random splits while factoring over F_p
    elapsed_s: float = 0.0


@dataclass(frozen=True)
class CountConfig:
    method: RootMethod = RootMethod.AUTO
    node_budget: int = 10**6
    threads: int = 1
    fp_prime_ceiling: int = DEFAULT_PRIME_CEILING

    def __post_init__(self):
        if self.node_budget < 1:
            raise ValueError(f"node_budget must be >= 1, got {self.node_budget}")
        if self.threads < 1:
            raise ValueError(f"threads must be >= 1, got {self.threads}")


@dataclass
class CountResult:
    N: int
    tree: TreeNode
    stats: CountStats
    seed: int


class _Budget:
    """Shared work counter; threads tick it under a lock."""

    __slots__ = ("limit", "used", "lock")

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0
        self.lock = threading.Lock()

    def tick(self, n: int = 1) -> None:
        with self.lock:
            self.used += n
            if self.used > self.limit:
                raise NodeBudgetExceeded(
                    f"recursion tree exceeded the node budget of {self.limit}"
                )


@dataclass
class _EvalCtx:
    config: CountConfig
    budget: _Budget
    stats: CountStats
    roots: RootStats

    def spawn(self) -> "_EvalCtx":
        return _EvalCtx(self.config, self.budget, CountStats(), RootStats())

    def absorb(self, sub: "_EvalCtx") -> None:
        self.stats.nodes += sub.stats.nodes
        self.stats.fp_scans += sub.stats.fp_scans
        self.roots.retries += sub.roots.retries


@dataclass(frozen=True)
class _ChildTask:
    locus: LocusRef
    s: int
    weight: int
    curve: SeparatedCurve
    k: int
    rng: SplitRng


def _reduction_degree(curve: SeparatedCurve) -> int:
    gbar, hbar = curve.reduced_parts()
    dg, dh = gbar.degree(), hbar.degree()
    return max(dg if dg is not None else 0, dh if dh is not None else 0)


def _eval_node(
    curve: SeparatedCurve,
    k_enter: int,
    depth: int,
    rng: SplitRng,
    ec: _EvalCtx,
    executor: ThreadPoolExecutor | None = None,
) -> tuple[TreeNode, int]:
    ec.budget.tick()
    ec.stats.nodes += 1
    cfg = ec.config
    p = curve.ctx.p

    v = curve_content(curve, cap=k_enter)
    if v >= k_enter:
        node = TreeNode(
            depth=depth,
            k=k_enter,
            curve=curve.reduce_to(curve.ctx.with_k(k_enter)),
            branch=Branch.ZERO,
            content_shift=k_enter,
            direct_term=1,
            fbar_degree=None,
        )
        return node, p ** (2 * k_enter)

    k_in = k_enter - v
    inner = divide_content(curve, v, k_in) if v else curve.reduce_to(curve.ctx.with_k(k_in))
    node = TreeNode(
        depth=depth,
        k=k_enter,
        curve=inner,
        branch=Branch.BASE,
        content_shift=v,
        direct_term=0,
        fbar_degree=_reduction_degree(inner),
    )

    if k_in == 1:
        node.direct_term = fp_point_count(inner, cfg.fp_prime_ceiling)
        ec.stats.fp_scans += 1
        return node, p ** (2 * v) * node.direct_term

    gbar, hbar = inner.reduced_parts()
    axis = line_branch_axis(inner)
    tasks: list[_ChildTask] = []
    total = 0

    if axis is None and gbar.degree() in (None, 0) and hbar.is_zero():
        node.branch = Branch.CONSTANT
        return node, 0

    if axis is None:
        locus = singular_locus(inner, rng=rng.child("locus"), method=cfg.method, stats=ec.roots)
        if isinstance(locus, AllCurvePoints):
            node.branch = Branch.DEGENERATE_FALLBACK
            sing = fp_curve_points(inner, cfg.fp_prime_ceiling)
            ec.budget.tick(len(sing))
            smooth = 0
        else:
            node.branch = Branch.SQUAREFREE
            sing = list(locus.points)
            smooth = fp_point_count(inner, cfg.fp_prime_ceiling) - len(sing)
        ec.stats.fp_scans += 1
        node.direct_term = p ** (k_in - 1) * smooth
        for zeta in sing:
            s = point_valuation(inner, zeta, cap=k_in).value
            if s <= 1:
                continue  # f(zeta + p y)/p is a unit constant mod p, no roots
            ref = LocusRef("point", zeta)
            if s >= k_in:
                node.saturated.append((ref, 2 * (k_in - 1)))
                total += p ** (2 * (k_in - 1))
            else:
                child_curve, k_child, s = perturb_point(inner, zeta, k_in)
                tasks.append(
                    _ChildTask(ref, s, 2 * (s - 1), child_curve, k_child, rng.child("pt", *zeta))
                )
    else:
        node.branch = Branch.LINE_X1 if axis == Axis.X1 else Branch.LINE_X2
        profile = fp_root_multiplicities(
            line_univariate_bar(inner), method=cfg.method, rng=rng.child("profile"), stats=ec.roots
        )
        node.direct_term = p**k_in * profile.nondegenerate_count()
        tag = "lx1" if axis == Axis.X1 else "lx2"
        for z1 in profile.degenerate_roots():
            s = line_valuation(inner, axis, z1, cap=k_in).value
            ref = LocusRef(node.branch.value, (z1,))
            if s >= k_in:
                node.saturated.append((ref, 2 * k_in - 1))
                total += p ** (2 * k_in - 1)
            else:
                child_curve, k_child, s = perturb_line(inner, axis, z1, k_in)
                tasks.append(
                    _ChildTask(ref, s, 2 * s - 1, child_curve, k_child, rng.child(tag, z1))
                )

    total += node.direct_term

    if executor is not None and cfg.threads > 1 and len(tasks) > 1:
        # Only the top level fans out; each subtree gets its own stats and
        # the results merge in task order, so the tree and the totals do not
        # depend on scheduling.
        subs = [ec.spawn() for _ in tasks]
        futures = [
            executor.submit(_eval_node, t.curve, t.k, depth + 1, t.rng, sub)
            for t, sub in zip(tasks, subs)
        ]
        outcomes = [f.result() for f in futures]
        for sub in subs:
            ec.absorb(sub)
    else:
        outcomes = [_eval_node(t.curve, t.k, depth + 1, t.rng, ec) for t in tasks]

    for task, (child_node, child_n) in zip(tasks, outcomes):
        child_node.edge_in = EdgeIn(task.locus, task.s, task.weight)
        node.children.append(child_node)
        total += p**task.weight * child_n

    return node, p ** (2 * v) * total


def _renumber(root: TreeNode) -> None:
    for i, node in enumerate(root.walk()):
        node.id = i


def count_points(
    curve: SeparatedCurve,
    ctx: PrimePowerCtx | None = None,
    config: CountConfig | None = None,
    seed: int = 0,
) -> CountResult:
    """Exact number of (x1, x2) in (Z/p^k)^2 with g(x1) + h(x2) = 0.

    ctx reduces the curve to a lower precision first; by default the count
    runs in the ring the curve carries. The returned tree always folds back
    to N.
    """
    cfg = config or CountConfig()
    if ctx is not None:
        curve = curve.reduce_to(ctx)
    started = perf_counter()
    ec = _EvalCtx(cfg, _Budget(cfg.node_budget), CountStats(), RootStats())
    rng = SplitRng(seed)
    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            root, n = _eval_node(curve, curve.ctx.k, 0, rng, ec, pool)
    else:
        root, n = _eval_node(curve, curve.ctx.k, 0, rng, ec)
    _renumber(root)
    ec.stats.root_retries = ec.roots.retries
    ec.stats.elapsed_s = perf_counter() - started
    return CountResult(N=n, tree=root, stats=ec.stats, seed=seed)


def build_tree(
    curve: SeparatedCurve,
    config: CountConfig | None = None,
    seed: int = 0,
) -> TreeNode:
    return count_points(curve, config=config, seed=seed).tree


def poincare_prefix(
    curve: SeparatedCurve,
    kmax: int,
    config: CountConfig | None = None,
    seed: int = 0,
) -> list[Fraction]:
    """[a_0, ..., a_kmax] with a_j = N_{p,j} / p^(2j), as exact fractions.

    a_0 = 1 always (the empty product of constraints). The curve must carry
    precision at least kmax; each prefix term reduces it down and recounts.
    """
    if kmax < 0:
        raise ValueError(f"kmax must be >= 0, got {kmax}")
    if curve.ctx.k < kmax:
        raise ValueError(f"curve carries precision {curve.ctx.k} < kmax = {kmax}")
    p = curve.ctx.p
    terms = [Fraction(1)]
    for j in range(1, kmax + 1):
        res = count_points(curve, ctx=curve.ctx.with_k(j), config=config, seed=seed)
        terms.append(Fraction(res.N, p ** (2 * j)))
    return terms


# ---------------------------------------------------------------------------
# Tree audit: structural bounds the recursion is supposed to satisfy.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AuditViolation:
    kind: str
    node_id: int
    detail: str


@dataclass
class AuditReport:
    degree_bound: int
    nodes_total: int
    nodes_counted: int
    max_depth: int
    level_counts: dict[int, int]
    violations: list[AuditViolation]

    @property
    def ok(self) -> bool:
        return not self.violations


def _edge_effective_degree(child: TreeNode) -> int:
    """Degree the perturbation provably caps by its valuation.

    Point edges bound the whole reduction: coefficient j of f(zeta + p y)
    carries p^j, so after dividing by p^s everything above degree s dies mod
    p. Line edges shift one axis only, so only that axis's degree is capped;
    the off-axis part is merely divided and can stay as large as it was.
    """
    kind = child.edge_in.locus.kind
    if kind == "point":
        return child.fbar_degree if child.fbar_degree is not None else 0
    p = child.curve.ctx.p
    part = child.curve.g if kind == "line_x1" else child.curve.h
    d = part.reduce_mod(p).degree()
    return d if d is not None else 0


def tree_audit(root: TreeNode, degree_bound: int | None = None) -> AuditReport:
    """Check the recursion tree against its size and degree bounds.

    With d the input degree and C = d(d-1)/2: every level beyond the root
    has at most C nodes, the whole tree at most 1 + (k-1)C, the root at most
    C children, and no node sits deeper than k - 1. Each edge caps its
    child's effective degree by its valuation, and a squarefree parent's
    children have effective degrees summing to at most d(d-1). Subtrees
    under a degenerate fallback node are
    exempt from the size counts (their fan-out is governed by p, not d) but
    their edges still must obey the degree caps.
    """
    d = degree_bound if degree_bound is not None else (root.curve.degree() or 0)
    cap = d * (d - 1) // 2
    k_root = root.k
    violations: list[AuditViolation] = []
    level_counts: dict[int, int] = {}
    nodes_total = 0
    max_depth = 0

    def walk(node: TreeNode, exempt: bool) -> None:
        nonlocal nodes_total, max_depth
        nodes_total += 1
        max_depth = max(max_depth, node.depth)
        if not exempt:
            level_counts[node.depth] = level_counts.get(node.depth, 0) + 1
        if node.depth + 1 > k_root:
            violations.append(
                AuditViolation("depth", node.id, f"depth {node.depth} with k = {k_root}")
            )
        child_exempt = exempt or node.branch == Branch.DEGENERATE_FALLBACK
        eff_sum = 0
        for child in node.children:
            eff = _edge_effective_degree(child)
            eff_sum += eff
            if eff > child.edge_in.s:
                violations.append(
                    AuditViolation(
                        "edge-degree",
                        child.id,
                        f"effective degree {eff} > s = {child.edge_in.s}"
                        f" via {child.edge_in.locus.kind}",
                    )
                )
            walk(child, child_exempt)
        if not exempt and node.branch == Branch.SQUAREFREE and node.children:
            if eff_sum > d * (d - 1):
                violations.append(
                    AuditViolation(
                        "sibling-sum",
                        node.id,
                        f"children effective degrees sum to {eff_sum} > {d * (d - 1)}",
                    )
                )

    walk(root, False)

    for depth, count in sorted(level_counts.items()):
        if depth >= 1 and count > cap:
            violations.append(
                AuditViolation("level-count", -1, f"level {depth} has {count} nodes > {cap}")
            )
    nodes_counted = sum(level_counts.values())
    if nodes_counted > 1 + (k_root - 1) * cap:
        violations.append(
            AuditViolation(
                "total-count",
                -1,
                f"{nodes_counted} counted nodes > 1 + (k-1)C = {1 + (k_root - 1) * cap}",
            )
        )
    if root.branch != Branch.DEGENERATE_FALLBACK and len(root.children) > cap:
        violations.append(
            AuditViolation("root-degree", root.id, f"{len(root.children)} children > {cap}")
        )
    violations.sort(key=lambda v: (v.node_id, v.kind))
    return AuditReport(
        degree_bound=d,
        nodes_total=nodes_total,
        nodes_counted=nodes_counted,
        max_depth=max_depth,
        level_counts=level_counts,
        violations=violations,
    )


# ---------------------------------------------------------------------------
# Tree serialization.
# ---------------------------------------------------------------------------


def _locus_to_json(ref: LocusRef) -> dict:
    return {"kind": ref.kind, "coords": list(ref.coords)}


def tree_to_json(node: TreeNode) -> dict:
    """JSON-safe dict; counts and coefficients as decimal strings."""
    return {
        "id": node.id,
        "depth": node.depth,
        "k": node.k,
        "branch": node.branch.value,
        "content_shift": node.content_shift,
        "fbar_degree": node.fbar_degree,
        "direct_term": str(node.direct_term),
        "curve": {
            "k": node.inner_k(),
            "g": [str(c) for c in node.curve.g.coeffs],
            "h": [str(c) for c in node.curve.h.coeffs],
        },
        "edge_in": None
        if node.edge_in is None
        else {
            "locus": _locus_to_json(node.edge_in.locus),
            "s": node.edge_in.s,
            "weight_exponent": node.edge_in.weight_exponent,
        },
        "saturated": [
            {"locus": _locus_to_json(ref), "exponent": e} for ref, e in node.saturated
        ],
        "children": [tree_to_json(child) for child in node.children],
    }


def tree_to_dot(root: TreeNode) -> str:
    """Graphviz rendering: nodes carry degree and precision, edges s and weight."""
    lines = ["digraph counting_tree {", "  node [shape=box];"]
    for node in root.walk():
        deg = "-" if node.fbar_degree is None else str(node.fbar_degree)
        lines.append(f'  n{node.id} [label="deg={deg}, k={node.k}"];')
    for node in root.walk():
        for child in node.children:
            e = child.edge_in
            lines.append(
                f'  n{node.id} -> n{child.id} [label="s={e.s}, w=p^{e.weight_exponent}"];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
