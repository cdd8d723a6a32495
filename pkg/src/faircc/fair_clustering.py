"""Fairlet pipeline: pair costs, per-color b-matchings, hyper-node
formation, pivot clustering on the base color, and attachment.

The pair cost of clustering a non-base vertex u with a base vertex v is the
number of third vertices whose edge labels to u and v disagree, plus one if
(u, v) itself is negative, i.e. exactly how much the total disagreement
count grows when the two are forced together.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bmatching import BMatching, BMatchingInstance, solve
from .errors import FairCCError, InfeasibleSpecError, InvalidInputError
from .model import (
    Clustering,
    ColorAssignment,
    FairnessSpec,
    SignedCompleteGraph,
    check_fairness,
    disagreements,
)
from .oracle import OracleLimit, opt_fair
from .pivot import PivotRun, best_of_restarts


@dataclass(frozen=True)
class HyperNode:
    """A base-color vertex plus the non-base vertices matched to it."""

    representative: int
    attached: tuple

    @property
    def members(self):
        return (self.representative,) + self.attached


@dataclass(frozen=True)
class FairCCConfig:
    spec: FairnessSpec
    pivot: PivotRun = PivotRun()


def pair_cost(g: SignedCompleteGraph, u: int, v: int) -> int:
    """Disagreement increase from forcing u and v into one cluster."""
    if u == v:
        raise InvalidInputError("pair cost needs two distinct vertices")
    cost = 1 if g.signs[u, v] < 0 else 0
    for w in range(g.n):
        if w != u and w != v and g.signs[u, w] != g.signs[v, w]:
            cost += 1
    return cost


def pair_cost_table(g: SignedCompleteGraph, lefts, rights) -> np.ndarray:
    """Vectorized pair costs, rows indexed by ``lefts`` (base vertices)."""
    S = g.signs
    diff = (S[np.asarray(lefts)][:, None, :] != S[np.asarray(rights)][None, :, :]).sum(axis=2)
    neg = (S[np.ix_(lefts, rights)] < 0).astype(np.int64)
    # the w = u and w = v terms always differ (0 vs a signed entry)
    return diff - 2 + neg


def _color_degree_bounds(colors, spec, color):
    lefts = len(colors.vertices_of(spec.base_color))
    rights = colors.counts[color]
    p, q = spec.bounds[color]
    if not p * lefts <= rights <= q * lefts:
        raise InfeasibleSpecError(
            f"color {color}: {rights} vertices cannot match {lefts} base vertices "
            f"at ratio 1:{p}..1:{q}"
        )
    return p, q


def build_matchings(
    g: SignedCompleteGraph,
    colors: ColorAssignment,
    spec: FairnessSpec,
    unit_costs: bool = False,
) -> dict:
    """One min-cost b-matching per non-base color against the base color.

    Returns color -> (BMatching, base vertex list, color vertex list).
    """
    if set(spec.bounds) != set(range(colors.num_colors)) - {spec.base_color}:
        raise InvalidInputError("spec must bound every non-base color")
    lefts = colors.vertices_of(spec.base_color)
    out = {}
    for color in sorted(spec.bounds):
        rights = colors.vertices_of(color)
        p, q = _color_degree_bounds(colors, spec, color)
        if unit_costs:
            table = [[1] * len(rights) for _ in lefts]
        else:
            table = pair_cost_table(g, lefts, rights).tolist()
        inst = BMatchingInstance(table, (p,) * len(lefts), (q,) * len(lefts))
        out[color] = (solve(inst), lefts, rights)
    return out


def hyper_nodes(matchings, lefts) -> list:
    """Fold the per-color matchings into one HyperNode per base vertex."""
    attached = {v: [] for v in lefts}
    for _, (matching, left_list, right_list) in sorted(matchings.items()):
        for r, l in enumerate(matching.assign):
            attached[left_list[l]].append(right_list[r])
    return [HyperNode(v, tuple(sorted(attached[v]))) for v in lefts]


def run_pipeline(g, colors, spec, pivot, unit_costs=False):
    """Match, pivot on the base color, attach. Shared by every fair
    variant; ``unit_costs`` swaps the pair costs for constant 1 entries."""
    matchings = build_matchings(g, colors, spec, unit_costs=unit_costs)
    lefts = colors.vertices_of(spec.base_color)
    nodes = hyper_nodes(matchings, lefts)
    run = PivotRun(pivot.seed, pivot.restarts, tuple(lefts))
    label = best_of_restarts(g, run)
    cluster_label = {}
    for node in nodes:
        for v in node.members:
            cluster_label[v] = label[node.representative]
    c = Clustering.from_labels([cluster_label[v] for v in range(g.n)])
    if not check_fairness(colors, c, spec).overall_pass:
        raise FairCCError("internal error: pipeline produced an unfair clustering")
    return c


def fair_cc_two_colors(
    g: SignedCompleteGraph, colors: ColorAssignment, p: int, pivot: PivotRun = PivotRun()
) -> Clustering:
    """Exact-ratio 1:p pipeline for two colors (color 0 is the base)."""
    if colors.num_colors != 2:
        raise InvalidInputError("two-color pipeline needs exactly 2 colors")
    spec = FairnessSpec.exact({1: p})
    if colors.counts[1] != p * colors.counts[0]:
        raise InfeasibleSpecError(
            f"global counts {colors.counts[0]}:{colors.counts[1]} are not in ratio 1:{p}"
        )
    return run_pipeline(g, colors, spec, pivot)


def fair_cc_multi(
    g: SignedCompleteGraph,
    colors: ColorAssignment,
    spec: FairnessSpec,
    pivot: PivotRun = PivotRun(),
    try_all_bases: bool = False,
) -> Clustering:
    """Exact-ratio pipeline for any number of colors.

    With ``try_all_bases`` (only valid when every ratio is 1:1) the pipeline
    runs once per candidate base color and keeps the cheapest result.
    """
    if not spec.is_exact:
        raise InvalidInputError("fair_cc_multi needs an exact-ratio spec")
    if not try_all_bases:
        return run_pipeline(g, colors, spec, pivot)
    if any(p != 1 for p, _ in spec.bounds.values()):
        raise InvalidInputError("try_all_bases requires all ratios 1:1")
    best = None
    for base in range(colors.num_colors):
        alt = FairnessSpec.exact(
            {c: 1 for c in range(colors.num_colors) if c != base}, base_color=base
        )
        c = run_pipeline(g, colors, alt, pivot)
        cost = disagreements(g, c)
        if best is None or cost < best[0]:
            best = (cost, c)
    return best[1]


def fair_cc_bounded(
    g: SignedCompleteGraph,
    colors: ColorAssignment,
    spec: FairnessSpec,
    pivot: PivotRun = PivotRun(),
) -> Clustering:
    """Interval pipeline: base degree in [p_i, q_i] per non-base color."""
    return run_pipeline(g, colors, spec, pivot)


def approximation_budget(spec: FairnessSpec, num_colors: int, alpha: int = 3) -> int:
    """Worst-case multiplier on the fair optimum guaranteed by the
    pipeline: (q^2+2q)*alpha + 4q^2 for two colors, and the multi-color
    charging constant otherwise."""
    qs = [q for _, q in spec.bounds.values()]
    qmax = max(qs)
    if num_colors == 2:
        return (qmax * qmax + 2 * qmax) * alpha + 4 * qmax * qmax
    k = num_colors
    return (((k - 1) * qmax) ** 2 + 2 * qmax) * alpha + sum(
        2 * q * (k + 1) * qmax for q in qs
    )


@dataclass(frozen=True)
class MatchingBoundReport:
    """Per-color matching weights against the 2*q_i*OPT_fair budget."""

    weights: dict  # color -> w(M_i)
    opt_fair_value: int
    budgets: dict  # color -> 2*q_i*OPT_fair
    passes: dict
    overall_pass: bool


def matching_weight_bound_check(
    g: SignedCompleteGraph,
    colors: ColorAssignment,
    spec: FairnessSpec,
    limit: OracleLimit | None = None,
) -> MatchingBoundReport:
    """Verify w(M_i) <= 2*q_i*OPT_fair for every per-color matching (with
    q_i = p_i in exact-ratio mode this is the 2p bound, and 2*OPT at 1:1)."""
    matchings = build_matchings(g, colors, spec)
    _, opt_value = opt_fair(g, colors, spec, limit=limit)
    weights, budgets, passes = {}, {}, {}
    for color, (matching, _, _) in matchings.items():
        _, q = spec.bounds[color]
        weights[color] = matching.weight
        budgets[color] = 2 * q * opt_value
        passes[color] = matching.weight <= budgets[color]
    return MatchingBoundReport(weights, opt_value, budgets, passes, all(passes.values()))
