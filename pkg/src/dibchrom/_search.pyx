# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backtracking search for surjective acyclic (b-)colourings.

Mirrors ``_search_py.search`` step for step on 64-bit masks (n <= 64).
"""
from libc.stdint cimport uint64_t, int64_t

cdef enum:
    MAXN = 64

cdef extern from * nogil:
    int __builtin_ctzll(unsigned long long)
    int __builtin_popcountll(unsigned long long)


cdef struct State:
    int n
    int k
    int need_b
    int64_t node_limit
    int64_t nodes
    int hit_limit
    uint64_t full
    uint64_t out[MAXN]
    uint64_t inn[MAXN]
    uint64_t cls[MAXN]
    int col[MAXN]


cdef inline bint creates_cycle(State* st, int v, uint64_t S) nogil:
    cdef uint64_t target = st.inn[v] & S
    cdef uint64_t reach, frontier, nxt, f
    if target == 0:
        return False
    reach = st.out[v] & S
    frontier = reach
    while frontier:
        if reach & target:
            return True
        nxt = 0
        f = frontier
        while f:
            nxt |= st.out[__builtin_ctzll(f)]
            f &= f - 1
        nxt &= S & ~reach
        reach |= nxt
        frontier = nxt
    return (reach & target) != 0


cdef inline bint class_ok(State* st, int c, uint64_t cand, int used, uint64_t U,
                          uint64_t* nb) nogil:
    cdef int spare = st.k - used - (1 if c >= used else 0)
    cdef int x, j
    cdef uint64_t m
    cdef bint good
    while cand:
        x = __builtin_ctzll(cand)
        cand &= cand - 1
        m = nb[x]
        if spare and __builtin_popcountll(m & U) < spare:
            continue
        good = True
        for j in range(used):
            if j != c and (m & (st.cls[j] | U)) == 0:
                good = False
                break
        if good:
            return True
    return False


cdef bint b_feasible(State* st, int used, uint64_t U) nogil:
    cdef int c
    cdef uint64_t cand
    for c in range(used):
        cand = st.cls[c] | U
        if not class_ok(st, c, cand, used, U, st.out) or not class_ok(st, c, cand, used, U, st.inn):
            return False
    if used < st.k:
        if not class_ok(st, used, U, used, U, st.out) or not class_ok(st, used, U, used, U, st.inn):
            return False
    return True


cdef bint rec(State* st, int v, int used) nogil:
    cdef int c, top, nused
    cdef uint64_t S, U
    st.nodes += 1
    if st.node_limit and st.nodes > st.node_limit:
        st.hit_limit = 1
        return False
    if v == st.n:
        return used == st.k
    if used + (st.n - v) < st.k:
        return False
    if v + 1 >= 64:
        U = 0
    else:
        U = st.full & ~(((<uint64_t>1) << (v + 1)) - 1)
    top = used if used < st.k else st.k - 1
    for c in range(top + 1):
        S = st.cls[c]
        if S and creates_cycle(st, v, S):
            continue
        st.cls[c] = S | ((<uint64_t>1) << v)
        st.col[v] = c
        nused = used + 1 if c == used else used
        if (not st.need_b or b_feasible(st, nused, U)) and rec(st, v + 1, nused):
            return True
        if st.hit_limit:
            return False
        st.cls[c] = S
        st.col[v] = -1
    return False


def search(int n, out, inn, int k, bint need_b, long long node_limit=0):
    """See ``_search_py.search``."""
    cdef State st
    cdef int i
    cdef bint ok
    if n > MAXN:
        raise ValueError("compiled search supports at most 64 vertices")
    if k < 1 or k > n:
        return 0, None, 0
    st.n = n
    st.k = k
    st.need_b = need_b
    st.node_limit = node_limit
    st.nodes = 0
    st.hit_limit = 0
    st.full = (<uint64_t>0xFFFFFFFFFFFFFFFF) if n == 64 else (((<uint64_t>1) << n) - 1)
    for i in range(n):
        st.out[i] = <uint64_t>out[i]
        st.inn[i] = <uint64_t>inn[i]
        st.col[i] = -1
    for i in range(k):
        st.cls[i] = 0
    with nogil:
        ok = rec(&st, 0, 0)
    if st.hit_limit:
        return -1, None, st.nodes
    if ok:
        return 1, [st.col[i] for i in range(n)], st.nodes
    return 0, None, st.nodes
