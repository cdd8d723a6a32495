"""Exact min-cost bipartite b-matching with per-left-node degree intervals.

Solved as integer min-cost flow: source -> left arcs carry the degree
interval (lower bounds via a split sink that must absorb exactly the
mandatory units), left -> right arcs carry the pair costs, every right node
is matched exactly once. Successive shortest paths with vertex potentials
keep all reduced costs nonnegative, so each augmentation is a plain
Dijkstra; everything stays in integers.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import InfeasibleSpecError, InvalidInputError


@dataclass(frozen=True)
class BMatchingInstance:
    """L x R nonnegative integer cost table with degree interval
    [degree_lo[l], degree_hi[l]] per left node; right nodes have degree 1."""

    cost: tuple  # tuple of L rows, each a tuple of R ints
    degree_lo: tuple
    degree_hi: tuple

    def __post_init__(self):
        cost = tuple(tuple(int(c) for c in row) for row in self.cost)
        lo = tuple(int(x) for x in self.degree_lo)
        hi = tuple(int(x) for x in self.degree_hi)
        if not cost or not cost[0]:
            raise InvalidInputError("cost table must be nonempty")
        if any(len(row) != len(cost[0]) for row in cost):
            raise InvalidInputError("ragged cost table")
        if any(c < 0 for row in cost for c in row):
            raise InvalidInputError("costs must be nonnegative")
        if len(lo) != len(cost) or len(hi) != len(cost):
            raise InvalidInputError("degree bounds must have one entry per left node")
        if any(l < 0 or l > h for l, h in zip(lo, hi)):
            raise InvalidInputError("need 0 <= degree_lo <= degree_hi")
        object.__setattr__(self, "cost", cost)
        object.__setattr__(self, "degree_lo", lo)
        object.__setattr__(self, "degree_hi", hi)

    @property
    def left_size(self):
        return len(self.cost)

    @property
    def right_size(self):
        return len(self.cost[0])

    def to_dict(self):
        """JSON-ready mirror for debug dumps."""
        return {
            "cost": [list(row) for row in self.cost],
            "degree_lo": list(self.degree_lo),
            "degree_hi": list(self.degree_hi),
        }


@dataclass(frozen=True)
class BMatching:
    """Solved assignment: per-right-node left index plus total cost."""

    assign: tuple
    weight: int

    def degrees(self, left_size):
        deg = [0] * left_size
        for l in self.assign:
            deg[l] += 1
        return deg


class _FlowNetwork:
    def __init__(self, num_nodes):
        self.graph = [[] for _ in range(num_nodes)]

    def add_arc(self, u, v, cap, cost):
        self.graph[u].append([v, cap, cost, len(self.graph[v])])
        self.graph[v].append([u, 0, -cost, len(self.graph[u]) - 1])

    def min_cost_flow(self, source, sink, amount):
        """Send ``amount`` units; returns total cost or None if the network
        cannot carry that much flow."""
        n = len(self.graph)
        potential = [0] * n
        total = 0
        inf = float("inf")
        while amount > 0:
            dist = [inf] * n
            dist[source] = 0
            prev = [None] * n  # (node, arc index)
            heap = [(0, source)]
            while heap:
                d, u = heapq.heappop(heap)
                if d > dist[u]:
                    continue
                for i, (v, cap, cost, _) in enumerate(self.graph[u]):
                    if cap <= 0:
                        continue
                    nd = d + cost + potential[u] - potential[v]
                    if nd < dist[v]:
                        dist[v] = nd
                        prev[v] = (u, i)
                        heapq.heappush(heap, (nd, v))
            if dist[sink] == inf:
                return None
            for v in range(n):
                if dist[v] < inf:
                    potential[v] += dist[v]
            # bottleneck along the path
            push = amount
            v = sink
            while v != source:
                u, i = prev[v]
                push = min(push, self.graph[u][i][1])
                v = u
            v = sink
            while v != source:
                u, i = prev[v]
                arc = self.graph[u][i]
                arc[1] -= push
                self.graph[v][arc[3]][1] += push
                total += push * arc[2]
                v = u
            amount -= push
        return total


def solve(inst: BMatchingInstance) -> BMatching:
    """Feasible matching of exactly minimum total cost.

    Raises InfeasibleSpecError when no assignment satisfies every degree
    interval.
    """
    L, R = inst.left_size, inst.right_size
    lo_sum = sum(inst.degree_lo)
    hi_sum = sum(inst.degree_hi)
    if not lo_sum <= R <= hi_sum:
        raise InfeasibleSpecError(
            f"{R} right nodes cannot meet degree bounds (sum lo {lo_sum}, sum hi {hi_sum})"
        )
    source = 0
    right0 = 1
    left0 = right0 + R
    sink_mand = left0 + L
    sink_opt = sink_mand + 1
    sink = sink_opt + 1
    net = _FlowNetwork(sink + 1)
    for r in range(R):
        net.add_arc(source, right0 + r, 1, 0)
    right_arc_start = [len(net.graph[right0 + r]) for r in range(R)]
    for r in range(R):
        for l in range(L):
            net.add_arc(right0 + r, left0 + l, 1, inst.cost[l][r])
    for l in range(L):
        if inst.degree_lo[l]:
            net.add_arc(left0 + l, sink_mand, inst.degree_lo[l], 0)
        if inst.degree_hi[l] > inst.degree_lo[l]:
            net.add_arc(left0 + l, sink_opt, inst.degree_hi[l] - inst.degree_lo[l], 0)
    net.add_arc(sink_mand, sink, lo_sum, 0)
    net.add_arc(sink_opt, sink, R - lo_sum, 0)
    total = net.min_cost_flow(source, sink, R)
    if total is None:
        raise InfeasibleSpecError("degree intervals admit no full assignment")
    assign = []
    for r in range(R):
        hit = None
        for v, cap, _, _ in net.graph[right0 + r][right_arc_start[r]:]:
            if left0 <= v < left0 + L and cap == 0:
                hit = v - left0
                break
        assign.append(hit)
    weight = sum(inst.cost[l][r] for r, l in enumerate(assign))
    return BMatching(tuple(assign), weight)


def solve_exact_degree(cost, p) -> BMatching:
    """All left degrees exactly p; requires R == p * L."""
    cost = tuple(tuple(row) for row in cost)
    L = len(cost)
    R = len(cost[0]) if L else 0
    if R != p * L:
        raise InfeasibleSpecError(f"exact degree {p} needs {p * L} right nodes, got {R}")
    inst = BMatchingInstance(cost, (p,) * L, (p,) * L)
    return solve(inst)
