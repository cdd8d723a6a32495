# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled branch-and-bound over set partitions.

Hot-loop twin of ``_search_py``; identical traversal order and tie-breaking.
"""

from libc.stdlib cimport malloc, free


cdef struct SearchState:
    int n
    int num_colors
    int base_color
    bint fair
    unsigned char *neg      # n*n, row-major
    long long *color_of
    long long *p_bound
    long long *q_bound
    long long *assign
    long long *best_assign
    long long best_cost
    long long *hist         # scratch, num_colors entries


cdef bint _fair_ok(SearchState *st, int num_blocks) noexcept:
    cdef int b, v, c
    cdef long long n1
    for b in range(num_blocks):
        for c in range(st.num_colors):
            st.hist[c] = 0
        for v in range(st.n):
            if st.assign[v] == b:
                st.hist[st.color_of[v]] += 1
        n1 = st.hist[st.base_color]
        if n1 < 1:
            return False
        for c in range(st.num_colors):
            if c == st.base_color:
                continue
            if st.hist[c] < n1 * st.p_bound[c] or st.hist[c] > n1 * st.q_bound[c]:
                return False
    return True


cdef void _walk(SearchState *st, int v, int num_blocks, long long cost) noexcept:
    cdef int b, u
    cdef long long delta, new_cost
    cdef unsigned char *row
    if v == st.n:
        if (not st.fair) or _fair_ok(st, num_blocks):
            if st.best_cost < 0 or cost < st.best_cost:
                st.best_cost = cost
                for u in range(st.n):
                    st.best_assign[u] = st.assign[u]
        return
    row = st.neg + v * st.n
    for b in range(num_blocks + 1):
        delta = 0
        for u in range(v):
            if st.assign[u] == b:
                delta += row[u]
            else:
                delta += 1 - row[u]
        new_cost = cost + delta
        if st.best_cost >= 0 and new_cost >= st.best_cost:
            continue
        st.assign[v] = b
        _walk(st, v + 1, num_blocks if num_blocks > b + 1 else b + 1, new_cost)
    st.assign[v] = 0


def best_partition(neg, color_of, base_color, p_bound, q_bound, fair):
    """See ``_search_py.best_partition``; same contract and results."""
    cdef int n = len(neg)
    cdef int num_colors = len(p_bound)
    cdef SearchState st
    cdef int i, j
    st.n = n
    st.num_colors = num_colors
    st.base_color = base_color
    st.fair = bool(fair)
    st.best_cost = -1
    st.neg = <unsigned char *> malloc(n * n * sizeof(unsigned char))
    st.color_of = <long long *> malloc(n * sizeof(long long))
    st.p_bound = <long long *> malloc(num_colors * sizeof(long long))
    st.q_bound = <long long *> malloc(num_colors * sizeof(long long))
    st.assign = <long long *> malloc(n * sizeof(long long))
    st.best_assign = <long long *> malloc(n * sizeof(long long))
    st.hist = <long long *> malloc(num_colors * sizeof(long long))
    try:
        for i in range(n):
            row = neg[i]
            for j in range(n):
                st.neg[i * n + j] = 1 if row[j] else 0
            st.color_of[i] = color_of[i]
            st.assign[i] = 0
        for i in range(num_colors):
            st.p_bound[i] = p_bound[i]
            st.q_bound[i] = q_bound[i]
        _walk(&st, 0, 0, 0)
        if st.best_cost < 0:
            return -1, None
        return st.best_cost, [st.best_assign[i] for i in range(n)]
    finally:
        free(st.neg)
        free(st.color_of)
        free(st.p_bound)
        free(st.q_bound)
        free(st.assign)
        free(st.best_assign)
        free(st.hist)
