"""Brute-force reference implementations, written from the definitions only."""
from __future__ import annotations

import networkx as nx

from dibchrom.digraph import Digraph


def set_partitions(n: int):
    """Restricted-growth strings: every colouring up to renaming, exactly once."""
    if n == 0:
        yield []
        return

    def rec(prefix: list[int], k: int):
        if len(prefix) == n:
            yield list(prefix)
            return
        for c in range(1, k + 2):
            prefix.append(c)
            yield from rec(prefix, max(k, c))
            prefix.pop()

    yield from rec([], 0)


def class_acyclic(d: Digraph, cls: list[int]) -> bool:
    g = nx.DiGraph()
    g.add_nodes_from(cls)
    g.add_edges_from((u, v) for u, v in d.arcs if u in cls and v in cls)
    return nx.is_directed_acyclic_graph(g)


def is_b_coloring(d: Digraph, colors: list[int]) -> bool:
    k = max(colors, default=0)
    classes = [[v for v in range(d.n) if colors[v] == c] for c in range(1, k + 1)]
    if not all(class_acyclic(d, cls) for cls in classes):
        return False
    for i, cls in enumerate(classes):
        others = [c for j, c in enumerate(classes) if j != i]
        plus = any(all(any((x, y) in d.arcs for y in o) for o in others) for x in cls)
        minus = any(all(any((y, x) in d.arcs for y in o) for o in others) for x in cls)
        if not (plus and minus):
            return False
    return True


def acyclic(d: Digraph, colors: list[int]) -> bool:
    k = max(colors, default=0)
    return all(class_acyclic(d, [v for v in range(d.n) if colors[v] == c]) for c in range(1, k + 1))


def brute_dc(d: Digraph) -> int:
    return min(max(p, default=0) for p in set_partitions(d.n) if acyclic(d, p))


def brute_feasible(d: Digraph) -> set[int]:
    return {max(p, default=0) for p in set_partitions(d.n) if is_b_coloring(d, p)}


def brute_dib(d: Digraph) -> int:
    return max(brute_feasible(d))
