"""Loopless digraphs on vertices ``0..n-1`` with bitmask adjacency.

Digons (a pair of opposite arcs) are allowed. Every neighbourhood is kept
both as a Python ``int`` bitmask (bit ``u`` set means ``u`` is present),
which is what the search kernels consume, and as a frozenset view.
"""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

__all__ = [
    "Digraph",
    "Bipartition",
    "DegreeSummary",
    "build",
    "bipartition_of",
    "independence_number",
    "has_cycle_within",
    "generate",
    "enumerate_all",
    "disjoint_union",
    "FAMILIES",
    "ENUMERATION_CAP",
]

ENUMERATION_CAP = 4
HARD_ENUMERATION_CAP = 5


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class DegreeSummary:
    out_degrees: tuple[int, ...]
    in_degrees: tuple[int, ...]
    delta_plus: int
    delta_minus: int
    delta: int


class Digraph:
    """Immutable loopless digraph.

    Use :func:`build` to construct one from an arc list; it validates input.
    """

    __slots__ = ("n", "arcs", "out_masks", "in_masks", "_hash")

    def __init__(self, n: int, arcs: frozenset[tuple[int, int]]):
        out = [0] * n
        inn = [0] * n
        for u, v in arcs:
            out[u] |= 1 << v
            inn[v] |= 1 << u
        self.n = n
        self.arcs = arcs
        self.out_masks = tuple(out)
        self.in_masks = tuple(inn)
        self._hash = hash((n, arcs))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={self.arc_list()})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.arcs == other.arcs

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return self.n

    # -- queries ---------------------------------------------------------
    def arc_list(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_masks[u] >> v & 1)

    def out_neighbors(self, v: int) -> frozenset[int]:
        return frozenset(bits(self.out_masks[v]))

    def in_neighbors(self, v: int) -> frozenset[int]:
        return frozenset(bits(self.in_masks[v]))

    def out_degree(self, v: int) -> int:
        return self.out_masks[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.in_masks[v].bit_count()

    def degree_summary(self) -> DegreeSummary:
        outs = tuple(m.bit_count() for m in self.out_masks)
        ins = tuple(m.bit_count() for m in self.in_masks)
        dp = min(outs, default=0)
        dm = min(ins, default=0)
        return DegreeSummary(outs, ins, dp, dm, min(dp, dm))

    def min_degree(self) -> int:
        return self.degree_summary().delta

    def neighbor_mask(self, v: int) -> int:
        """Underlying undirected neighbourhood of ``v``."""
        return self.out_masks[v] | self.in_masks[v]

    def is_simple(self) -> bool:
        """True when the digraph has no digon."""
        return all(self.out_masks[v] & self.in_masks[v] == 0 for v in range(self.n))

    def digons(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in self.arc_list() if u < v and self.has_arc(v, u)]

    def weak_components(self) -> list[list[int]]:
        """Weakly connected components, each sorted, ordered by least vertex."""
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.neighbor_mask(v)
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(list(bits(comp)))
        return comps

    def is_weakly_connected(self) -> bool:
        return self.n <= 1 or len(self.weak_components()) == 1

    def reverse(self) -> Digraph:
        return Digraph(self.n, frozenset((v, u) for u, v in self.arcs))

    def induced(self, vertices: Iterable[int]) -> tuple[Digraph, list[int]]:
        """Induced subdigraph, relabelled densely.

        Returns the subdigraph and the list mapping new labels to old ones.
        """
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        arcs = frozenset(
            (index[u], index[v]) for u, v in self.arcs if u in index and v in index
        )
        return Digraph(len(keep), arcs), keep

    def relabel(self, perm: list[int]) -> Digraph:
        """Digraph with vertex ``v`` renamed to ``perm[v]``."""
        return Digraph(self.n, frozenset((perm[u], perm[v]) for u, v in self.arcs))


@dataclass(frozen=True)
class Bipartition:
    """Two disjoint independent vertex sets covering the digraph."""

    A: frozenset[int]
    B: frozenset[int]
    d: Digraph = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.A)

    @property
    def m(self) -> int:
        return len(self.B)

    @property
    def a_mask(self) -> int:
        return mask_of(self.A)

    @property
    def b_mask(self) -> int:
        return mask_of(self.B)

    def side_delta(self, side: Iterable[int]) -> int:
        degs = [
            min(self.d.out_masks[x].bit_count(), self.d.in_masks[x].bit_count())
            for x in side
        ]
        return min(degs, default=0)

    @property
    def delta_A(self) -> int:
        return self.side_delta(self.A)

    @property
    def delta_B(self) -> int:
        return self.side_delta(self.B)

    def swapped(self) -> Bipartition:
        return Bipartition(self.B, self.A, self.d)

    def smaller_first(self) -> Bipartition:
        """The same bipartition with the smaller side (ties: unchanged) as ``A``."""
        return self if self.n <= self.m else self.swapped()

    def validate(self) -> None:
        if self.A & self.B or (self.A | self.B) != frozenset(range(self.d.n)):
            raise ValueError("sides must partition the vertex set")
        for u, v in self.d.arcs:
            if (u in self.A) == (v in self.A):
                raise ValueError(f"arc ({u},{v}) lies inside one side")


def build(n: int, arc_list: Iterable[tuple[int, int]]) -> Digraph:
    """Build a digraph, rejecting loops and out-of-range endpoints."""
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    arcs = set()
    for u, v in arc_list:
        u, v = int(u), int(v)
        for x in (u, v):
            if not 0 <= x < n:
                raise ValueError(f"endpoint {x} out of range 0..{n - 1}")
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        arcs.add((u, v))
    return Digraph(n, frozenset(arcs))


def bipartition_of(d: Digraph) -> Bipartition | None:
    """2-colour the underlying graph; ``None`` if it has an odd cycle.

    In every component the side holding the smallest vertex becomes part of A.
    """
    side = [-1] * d.n
    for s in range(d.n):
        if side[s] != -1:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in bits(d.neighbor_mask(v)):
                if side[u] == -1:
                    side[u] = 1 - side[v]
                    queue.append(u)
                elif side[u] == side[v]:
                    return None
    A = frozenset(v for v in range(d.n) if side[v] == 0)
    B = frozenset(v for v in range(d.n) if side[v] == 1)
    return Bipartition(A, B, d)


def has_cycle_within(d: Digraph, s: Iterable[int] | int) -> bool:
    """Whether the subdigraph induced by ``s`` has a directed cycle.

    ``s`` may be an iterable of vertices or a bitmask. A digon is a 2-cycle.
    Repeatedly strips vertices with no out-neighbour left in the set.
    """
    live = s if isinstance(s, int) else mask_of(s)
    out = d.out_masks
    changed = True
    while live and changed:
        changed = False
        for v in bits(live):
            if out[v] & live == 0:
                live &= ~(1 << v)
                changed = True
    return live != 0


def independence_number(d: Digraph) -> tuple[int, frozenset[int]]:
    """Exact independence number with a witness set.

    Arcs in either direction block independence. Branch and bound over
    bitmasks, seeded with a greedy min-degree solution.
    """
    n = d.n
    if n == 0:
        return 0, frozenset()
    nbr = [d.neighbor_mask(v) for v in range(n)]

    # greedy lower bound
    cand = (1 << n) - 1
    greedy = 0
    while cand:
        v = min(bits(cand), key=lambda x: (nbr[x] & cand).bit_count())
        greedy |= 1 << v
        cand &= ~(nbr[v] | (1 << v))
    best = [greedy.bit_count(), greedy]

    def search(chosen: int, size: int, cand: int) -> None:
        if not cand:
            if size > best[0]:
                best[0], best[1] = size, chosen
            return
        if size + cand.bit_count() <= best[0]:
            return
        # branch on a max-degree candidate; isolated ones are taken outright
        v = max(bits(cand), key=lambda x: (nbr[x] & cand).bit_count())
        if nbr[v] & cand == 0:
            search(chosen | cand, size + cand.bit_count(), 0)
            return
        search(chosen | 1 << v, size + 1, cand & ~(nbr[v] | 1 << v))
        search(chosen, size, cand & ~(1 << v))

    search(0, 0, (1 << n) - 1)
    return best[0], frozenset(bits(best[1]))


def disjoint_union(*parts: Digraph) -> Digraph:
    arcs = []
    offset = 0
    for p in parts:
        arcs.extend((u + offset, v + offset) for u, v in p.arcs)
        offset += p.n
    return Digraph(offset, frozenset(arcs))


# -- generators ------------------------------------------------------------


def _complete_symmetric_bipartite(n: int, m: int) -> Digraph:
    _need(n >= 1 and m >= 1, "both sides need at least one vertex")
    arcs = []
    for a in range(n):
        for b in range(n, n + m):
            arcs += [(a, b), (b, a)]
    return Digraph(n + m, frozenset(arcs))


def _one_directional(n: int, m: int) -> Digraph:
    _need(n >= 1 and m >= 1, "both sides need at least one vertex")
    return Digraph(n + m, frozenset((a, b) for a in range(n) for b in range(n, n + m)))


def _orientation(n: int, m: int, rng: random.Random) -> Digraph:
    _need(n >= 1 and m >= 1, "both sides need at least one vertex")
    arcs = []
    for a in range(n):
        for b in range(n, n + m):
            arcs.append((a, b) if rng.random() < 0.5 else (b, a))
    return Digraph(n + m, frozenset(arcs))


def _balanced_orientation(n: int, m: int, rng: random.Random) -> Digraph:
    """Orientation of K_{n,m} where each A-vertex has out-degree floor or ceil of m/2."""
    _need(n >= 1 and m >= 1, "both sides need at least one vertex")
    arcs = []
    for a in range(n):
        bs = list(range(n, n + m))
        rng.shuffle(bs)
        k = m // 2 + (m % 2) * rng.randrange(2)
        arcs += [(a, b) for b in bs[:k]] + [(b, a) for b in bs[k:]]
    return Digraph(n + m, frozenset(arcs))


def _tournament(n: int, rng: random.Random) -> Digraph:
    _need(n >= 1, "need at least one vertex")
    arcs = []
    for u, v in itertools.combinations(range(n), 2):
        arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    return Digraph(n, frozenset(arcs))


def _transitive_tournament(n: int) -> Digraph:
    _need(n >= 1, "need at least one vertex")
    return Digraph(n, frozenset(itertools.combinations(range(n), 2)))


def _directed_cycle(n: int) -> Digraph:
    _need(n >= 2, "a directed cycle needs at least 2 vertices")
    return Digraph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def _random_digraph(n: int, p: float, rng: random.Random) -> Digraph:
    _need(n >= 1 and 0.0 <= p <= 1.0, "need n >= 1 and 0 <= p <= 1")
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    return Digraph(n, frozenset(arcs))


def _random_bipartite(
    n: int, m: int, delta: int, rng: random.Random, simple: bool = True, p: float = 0.3
) -> Digraph:
    """Random bipartite digraph (A = 0..n-1) with minimum degree at least ``delta``.

    Arcs are sampled with probability ``p`` per ordered cross pair, then
    vertices short of ``delta`` out- or in-arcs are topped up at random.
    """
    _need(n >= 1 and m >= 1, "both sides need at least one vertex")
    cap = min(n, m) // 2 if simple else min(n, m)
    _need(delta <= cap, f"min degree {delta} impossible for parts ({n},{m}) (simple={simple})")
    N = n + m
    out = [set() for _ in range(N)]
    inn = [set() for _ in range(N)]

    def other(v: int) -> range:
        return range(n, N) if v < n else range(n)

    def add(u: int, v: int) -> None:
        out[u].add(v)
        inn[v].add(u)

    for a in range(n):
        for b in range(n, N):
            for u, v in ((a, b), (b, a)):
                if rng.random() < p and not (simple and u in out[v]):
                    add(u, v)
    for _ in range(4 * N * max(delta, 1)):
        short = [v for v in range(N) if len(out[v]) < delta or len(inn[v]) < delta]
        if not short:
            break
        v = short[0]
        if len(out[v]) < delta:
            free = [u for u in other(v) if u not in out[v] and not (simple and u in inn[v])]
            if free:
                add(v, rng.choice(free))
            elif len(inn[v]) > delta:
                # simple case: turn a surplus in-arc around
                u = rng.choice(sorted(inn[v]))
                out[u].discard(v)
                inn[v].discard(u)
                add(v, u)
            else:
                break
        else:
            free = [u for u in other(v) if u not in inn[v] and not (simple and u in out[v])]
            if free:
                add(rng.choice(free), v)
            elif len(out[v]) > delta:
                u = rng.choice(sorted(out[v]))
                out[v].discard(u)
                inn[u].discard(v)
                add(u, v)
            else:
                break
    d = Digraph(N, frozenset((u, v) for u in range(N) for v in out[u]))
    _need(d.min_degree() >= delta, f"could not reach min degree {delta}")
    return d


def _circulant_2_regular(part: int, rng: random.Random | None) -> Digraph:
    """Simple bipartite 2-regular digraph on sides a_0..a_{p-1}, b_0..b_{p-1}.

    a_i -> b_i, b_{i+u} and b_i -> a_{i+s}, a_{i+t} (indices mod p), with the
    shifts chosen so that no digon appears. With an rng the shifts are drawn
    at random and the vertex labels permuted.
    """
    _need(part >= 4, "a simple 2-regular bipartite digraph needs parts of size >= 4")
    p = part
    if rng is None:
        u, s, t = 1, 1, 2
    else:
        u = rng.randrange(1, p)
        allowed = [x for x in range(p) if x % p != 0 and (x + u) % p != 0]
        s, t = rng.sample(allowed, 2)
    arcs = []
    for i in range(p):
        arcs += [(i, p + i), (i, p + (i + u) % p)]
        arcs += [(p + i, (i + s) % p), (p + i, (i + t) % p)]
    d = Digraph(2 * p, frozenset(arcs))
    if rng is not None:
        perm = list(range(2 * p))
        rng.shuffle(perm)
        d = d.relabel(perm)
    return d


def _need(cond: bool, reason: str) -> None:
    if not cond:
        raise ValueError(reason)


FAMILIES = {
    "complete-symmetric-bipartite": ("n", "m"),
    "one-directional-knm": ("n", "m"),
    "orientation-knm": ("n", "m"),
    "balanced-orientation-knm": ("n", "m"),
    "tournament": ("n",),
    "transitive-tournament": ("n",),
    "directed-cycle": ("n",),
    "random": ("n", "p"),
    "random-bipartite": ("n", "m", "delta", "simple", "p"),
    "circulant-2-regular-bipartite": ("part",),
}


def generate(family: str, seed: int | None = 0, **params) -> Digraph:
    """Generate a member of a named family; deterministic for a fixed seed.

    The result is checked against the family's defining invariants.
    """
    rng = random.Random(seed)
    if family == "complete-symmetric-bipartite":
        d = _complete_symmetric_bipartite(params["n"], params["m"])
    elif family == "one-directional-knm":
        d = _one_directional(params["n"], params["m"])
    elif family == "orientation-knm":
        d = _orientation(params["n"], params["m"], rng)
    elif family == "balanced-orientation-knm":
        d = _balanced_orientation(params["n"], params["m"], rng)
    elif family == "tournament":
        d = _tournament(params["n"], rng)
    elif family == "transitive-tournament":
        d = _transitive_tournament(params["n"])
    elif family == "directed-cycle":
        d = _directed_cycle(params["n"])
    elif family == "random":
        d = _random_digraph(params["n"], params.get("p", 0.3), rng)
    elif family == "random-bipartite":
        d = _random_bipartite(
            params["n"],
            params["m"],
            params.get("delta", 0),
            rng,
            simple=params.get("simple", True),
            p=params.get("p", 0.3),
        )
    elif family == "circulant-2-regular-bipartite":
        d = _circulant_2_regular(params["part"], rng if seed is not None else None)
    else:
        raise ValueError(f"unknown family {family!r}")
    _audit(family, d, params)
    return d


def _audit(family: str, d: Digraph, params: dict) -> None:
    if family in ("complete-symmetric-bipartite", "one-directional-knm",
                  "orientation-knm", "balanced-orientation-knm"):
        n, m = params["n"], params["m"]
        bp = bipartition_of(d)
        assert bp is not None
        if family == "complete-symmetric-bipartite":
            assert len(d.arcs) == 2 * n * m
        else:
            assert len(d.arcs) == n * m and d.is_simple()
    elif family in ("tournament", "transitive-tournament"):
        n = params["n"]
        assert len(d.arcs) == n * (n - 1) // 2 and d.is_simple()
    elif family == "random-bipartite":
        assert bipartition_of(d) is not None
        if params.get("simple", True):
            assert d.is_simple()
    elif family == "circulant-2-regular-bipartite":
        ds = d.degree_summary()
        assert set(ds.out_degrees) == {2} and set(ds.in_degrees) == {2}
        assert d.is_simple() and bipartition_of(d) is not None


# -- enumeration -----------------------------------------------------------


def enumerate_all(
    n: int,
    predicate: Callable[[Digraph], bool] | None = None,
    *,
    cap: int = ENUMERATION_CAP,
) -> Iterator[Digraph]:
    """Every loopless digraph on ``n`` labelled vertices, exactly once.

    Each unordered pair takes one of four states (none, u->v, v->u, digon),
    so there are ``4 ** (n choose 2)`` digraphs. ``cap`` may be raised to 5.
    """
    if cap > HARD_ENUMERATION_CAP:
        raise ValueError(f"enumeration cap cannot exceed {HARD_ENUMERATION_CAP}")
    if n > cap:
        raise ValueError(f"n={n} exceeds enumeration cap {cap}")
    pairs = list(itertools.combinations(range(n), 2))
    for states in itertools.product(range(4), repeat=len(pairs)):
        arcs = []
        for (u, v), s in zip(pairs, states):
            if s & 1:
                arcs.append((u, v))
            if s & 2:
                arcs.append((v, u))
        d = Digraph(n, frozenset(arcs))
        if predicate is None or predicate(d):
            yield d
