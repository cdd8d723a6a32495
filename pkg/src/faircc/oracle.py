"""Brute-force ground truth for small instances.

Optimal (fair and unconstrained) clusterings come from exhaustive search
over set partitions in restricted-growth-string order, b-matching optima
from exhaustive assignment enumeration, and ``mirror_graph`` builds the
vertex-duplication instance whose fair optimum equals four times the
unconstrained optimum of the base graph.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import bmatching
from ._kernels import best_partition
from .errors import InfeasibleSpecError, OracleLimitError
from .model import Clustering, ColorAssignment, FairnessSpec, SignedCompleteGraph

_ENV_MAX_N = "FAIRCC_ORACLE_MAX_N"


@dataclass(frozen=True)
class OracleLimit:
    """Size caps for the exhaustive searches."""

    max_n: int = 10
    max_right: int = 8

    def __post_init__(self):
        if self.max_n < 1 or self.max_right < 1:
            raise ValueError("oracle limits must be >= 1")

    @classmethod
    def default(cls):
        raw = os.environ.get(_ENV_MAX_N)
        return cls(max_n=int(raw)) if raw else cls()


def _kernel_args(g: SignedCompleteGraph):
    return (g.signs < 0).astype(np.uint8).tolist()


def opt_cc(g: SignedCompleteGraph, limit: OracleLimit | None = None):
    """Exhaustive minimum-disagreement clustering; ties resolve to the
    lexicographically smallest restricted growth string."""
    limit = limit or OracleLimit.default()
    if g.n > limit.max_n:
        raise OracleLimitError(f"n={g.n} exceeds oracle limit {limit.max_n}")
    cost, assign = best_partition(_kernel_args(g), [0] * g.n, 0, [1], [1], False)
    return Clustering(tuple(assign)), cost


def opt_fair(
    g: SignedCompleteGraph,
    colors: ColorAssignment,
    spec: FairnessSpec,
    limit: OracleLimit | None = None,
):
    """Exhaustive minimum over partitions whose every block passes the
    fairness check."""
    limit = limit or OracleLimit.default()
    if g.n > limit.max_n:
        raise OracleLimitError(f"n={g.n} exceeds oracle limit {limit.max_n}")
    num_colors = colors.num_colors
    p = [1] * num_colors
    q = [1] * num_colors
    for c, (pc, qc) in spec.bounds.items():
        p[c], q[c] = pc, qc
    cost, assign = best_partition(
        _kernel_args(g), list(colors.color_of), spec.base_color, p, q, True
    )
    if cost < 0:
        raise InfeasibleSpecError("no clustering satisfies the fairness spec")
    return Clustering(tuple(assign)), cost


def opt_bmatching(
    inst: bmatching.BMatchingInstance, limit: OracleLimit | None = None
) -> bmatching.BMatching:
    """Exhaustive minimum over all right-to-left assignments meeting the
    degree intervals. Independent verifier for the flow solver."""
    limit = limit or OracleLimit.default()
    L, R = inst.left_size, inst.right_size
    if R > limit.max_right:
        raise OracleLimitError(f"R={R} exceeds oracle limit {limit.max_right}")
    best = None
    assign = [0] * R
    deg = [0] * L

    def remaining_need(r):
        return sum(max(inst.degree_lo[l] - deg[l], 0) for l in range(L))

    def walk(r, weight):
        nonlocal best
        if r == R:
            if all(deg[l] >= inst.degree_lo[l] for l in range(L)):
                if best is None or weight < best[0]:
                    best = (weight, tuple(assign))
            return
        if remaining_need(r) > R - r:
            return
        for l in range(L):
            if deg[l] >= inst.degree_hi[l]:
                continue
            assign[r] = l
            deg[l] += 1
            walk(r + 1, weight + inst.cost[l][r])
            deg[l] -= 1

    walk(0, 0)
    if best is None:
        raise InfeasibleSpecError("degree intervals admit no full assignment")
    return bmatching.BMatching(best[1], best[0])


def mirror_graph(g: SignedCompleteGraph):
    """Duplicate every vertex with a positive edge to its copy.

    Vertices 0..n-1 keep color 0, mirrors n..2n-1 get color 1; all other
    cross edges copy the sign of the underlying pair.
    """
    n = g.n
    signs = np.empty((2 * n, 2 * n), dtype=np.int8)
    signs[:n, :n] = g.signs
    signs[n:, n:] = g.signs
    signs[:n, n:] = g.signs
    signs[n:, :n] = g.signs
    for u in range(n):
        signs[u, n + u] = signs[n + u, u] = 1
    np.fill_diagonal(signs, 0)
    h = SignedCompleteGraph(2 * n, signs)
    colors = ColorAssignment(tuple([0] * n + [1] * n))
    return h, colors
