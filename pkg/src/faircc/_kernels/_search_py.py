"""Pure-Python branch-and-bound over set partitions.

Fallback twin of the compiled extension in ``_search.pyx``; both walk
restricted growth strings in lexicographic order with identical pruning, so
they return bit-identical results.
"""


def best_partition(neg, color_of, base_color, p_bound, q_bound, fair):
    """Minimum-disagreement partition of an n-vertex signed complete graph.

    neg[u][v] is 1 for a negative pair, 0 for positive. When ``fair`` is
    true, only partitions whose every block has n1 >= 1 base-color vertices
    and n1*p_c <= n_c <= n1*q_c for every non-base color c are considered.

    Returns (cost, assignment) where assignment is the lexicographically
    smallest restricted growth string among the optima, or (-1, None) when
    no feasible partition exists.
    """
    n = len(neg)
    neg = [list(map(int, row)) for row in neg]
    color_of = list(map(int, color_of))
    num_colors = len(p_bound)
    best_cost = -1
    best_assign = None
    assign = [0] * n

    def fair_ok(num_blocks):
        for b in range(num_blocks):
            hist = [0] * num_colors
            for v in range(n):
                if assign[v] == b:
                    hist[color_of[v]] += 1
            n1 = hist[base_color]
            if n1 < 1:
                return False
            for c in range(num_colors):
                if c == base_color:
                    continue
                if not n1 * p_bound[c] <= hist[c] <= n1 * q_bound[c]:
                    return False
        return True

    def walk(v, num_blocks, cost):
        nonlocal best_cost, best_assign
        if v == n:
            if not fair or fair_ok(num_blocks):
                if best_cost < 0 or cost < best_cost:
                    best_cost = cost
                    best_assign = list(assign)
            return
        row = neg[v]
        for b in range(num_blocks + 1):
            delta = 0
            for u in range(v):
                if assign[u] == b:
                    delta += row[u]
                else:
                    delta += 1 - row[u]
            new_cost = cost + delta
            if best_cost >= 0 and new_cost >= best_cost:
                continue
            assign[v] = b
            walk(v + 1, max(num_blocks, b + 1), new_cost)
        assign[v] = 0

    walk(0, 0, 0)
    return best_cost, best_assign
