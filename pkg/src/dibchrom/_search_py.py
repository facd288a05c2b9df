"""Pure-Python backtracking search for surjective acyclic (b-)colourings.

Reference implementation and fallback for ``_search.pyx``; the two must
explore the same tree in the same order so that witnesses and node counts
agree across backends.
"""
from __future__ import annotations

FOUND, INFEASIBLE, LIMIT = 1, 0, -1


class _Limit(Exception):
    pass


def search(n, out, inn, k, need_b, node_limit=0):
    """Find a colouring of ``0..n-1`` onto exactly ``k`` acyclic classes.

    Vertices are coloured in index order, and vertex ``v`` may open at most
    one new class (restricted-growth symmetry breaking). With ``need_b``
    every class must also hold an out-dominating (b+) and an in-dominating
    (b-) vertex; an optimistic bound prunes classes that can no longer get
    one. Returns ``(status, colours or None, nodes)``.
    """
    if k < 1 or k > n:
        return INFEASIBLE, None, 0
    out = list(out)
    inn = list(inn)
    cls = [0] * k
    col = [-1] * n
    nodes = 0
    full = (1 << n) - 1

    def creates_cycle(v, S):
        target = inn[v] & S
        if not target:
            return False
        reach = out[v] & S
        frontier = reach
        while frontier:
            if reach & target:
                return True
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= out[low.bit_length() - 1]
                f ^= low
            nxt &= S & ~reach
            reach |= nxt
            frontier = nxt
        return bool(reach & target)

    def class_ok(c, cand, used, U, nb):
        # some x in cand reaches every other class through nb
        spare = k - used - (1 if c >= used else 0)
        while cand:
            low = cand & -cand
            x = low.bit_length() - 1
            cand ^= low
            m = nb[x]
            if spare and (m & U).bit_count() < spare:
                continue
            for j in range(used):
                if j != c and m & (cls[j] | U) == 0:
                    break
            else:
                return True
        return False

    def b_feasible(used, U):
        for c in range(used):
            cand = cls[c] | U
            if not class_ok(c, cand, used, U, out) or not class_ok(c, cand, used, U, inn):
                return False
        if used < k:
            if not class_ok(used, U, used, U, out) or not class_ok(used, U, used, U, inn):
                return False
        return True

    def rec(v, used):
        nonlocal nodes
        nodes += 1
        if node_limit and nodes > node_limit:
            raise _Limit
        if v == n:
            return used == k
        if used + (n - v) < k:
            return False
        U = full & ~((1 << (v + 1)) - 1)
        top = used if used < k else k - 1
        for c in range(top + 1):
            S = cls[c]
            if S and creates_cycle(v, S):
                continue
            cls[c] = S | (1 << v)
            col[v] = c
            nused = used + 1 if c == used else used
            if (not need_b or b_feasible(nused, U)) and rec(v + 1, nused):
                return True
            cls[c] = S
            col[v] = -1
        return False

    try:
        ok = rec(0, 0)
    except _Limit:
        return LIMIT, None, nodes
    return (FOUND, list(col), nodes) if ok else (INFEASIBLE, None, nodes)
