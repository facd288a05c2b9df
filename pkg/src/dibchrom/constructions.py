"""Explicit b-colouring builders for bipartite digraphs.

Every builder returns a :class:`ConstructionResult` whose colouring has been
pushed through :func:`~dibchrom.coloring.verify`; nothing is trusted
unverified. Builders that follow a case analysis record which case produced
the colouring in ``method``.
"""
from __future__ import annotations

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .coloring import Coloring, VerificationReport, verify
from .digraph import Bipartition, Digraph, bipartition_of, bits, mask_of
from .exact import (
    HypothesisError,
    b_coloring_exists,
    dib_exceeds,
    is_complete_symmetric_bipartite,
    theorem7_predicate,
    theorem8_predicates,
)
from .reduction import reduce_once, reduce_to_b_coloring

__all__ = [
    "ConstructionError",
    "PartitionNotFound",
    "ConstructionResult",
    "BadPath",
    "Biclique",
    "theorem7_construct",
    "theorem8_construct",
    "max_bad_path",
    "bad_paths",
    "theorem9_construct",
    "balanced_partition_count",
    "balanced_partitions",
    "theorem10_inequality",
    "partition_coloring",
    "corollary11_threshold",
    "is_orientation_knm",
    "greedy_coloring",
    "cross_pair_value",
    "theorem13_inequality",
    "cross_pair_coloring",
    "theorem14_threshold",
    "find_one_directional_biclique",
    "biclique_coloring",
]

log = logging.getLogger(__name__)


class ConstructionError(AssertionError):
    """A construction produced something that fails verification or its own budget."""


class PartitionNotFound(LookupError):
    """No suitable balanced partition within the search budget (not a disproof)."""


@dataclass
class ConstructionResult:
    coloring: Coloring
    report: VerificationReport
    method: str
    witness: object = None
    notes: list[str] = field(default_factory=list)

    @property
    def k(self) -> int:
        return self.coloring.k


def _finish(d: Digraph, colors: Sequence[int], method: str, witness=None) -> ConstructionResult:
    c = Coloring(colors)
    rep = verify(d, c)
    if not rep.is_b_coloring:
        raise ConstructionError(f"{method}: output is not a b-colouring ({rep.failure_reason()})")
    return ConstructionResult(c, rep, method, witness)


def _try_colors(d: Digraph, colors: Sequence[int]) -> Coloring | None:
    try:
        c = Coloring(colors)
    except ValueError:
        return None
    return c if verify(d, c).is_b_coloring else None


def _require_bipartition(d: Digraph, bp: Bipartition | None) -> Bipartition:
    if bp is None:
        bp = bipartition_of(d)
        if bp is None:
            raise HypothesisError("digraph is not bipartite")
    bp.validate()
    return bp


# -- components -------------------------------------------------------------


def _two_colour_other_side(d: Digraph, u: int, other: list[int], p: int, q: int) -> dict[int, int]:
    """Colour ``other`` with p/q so that both colours meet N+(u) and N-(u)."""
    outs = [v for v in other if d.has_arc(u, v)]
    ins = [v for v in other if d.has_arc(v, u)]
    col: dict[int, int] = {}
    if len(outs) >= 2:
        col[outs[0]], col[outs[1]] = p, q
    for want in (p, q):
        if not any(col.get(v) == want for v in ins):
            free = [v for v in ins if v not in col]
            if free:
                col[free[0]] = want
    for v in other:
        col.setdefault(v, p)
    return col


def _component_sides(d: Digraph, comp: list[int]) -> tuple[list[int], list[int]]:
    sub, back = d.induced(comp)
    bp = bipartition_of(sub)
    assert bp is not None
    return sorted(back[v] for v in bp.A), sorted(back[v] for v in bp.B)


def _star_component(d: Digraph, colors: list[int], comp: list[int], u: int, own: int, p: int, q: int) -> None:
    """Make ``u`` a b-vertex of colour ``own``: its side gets ``own``, the other side p/q."""
    X, Y = _component_sides(d, comp)
    if u in Y:
        X, Y = Y, X
    for v in X:
        colors[v] = own
    for v, c in _two_colour_other_side(d, u, Y, p, q).items():
        colors[v] = c


def theorem7_construct(d: Digraph) -> ConstructionResult:
    """A b-colouring with at least 3 colours of a disconnected bipartite digraph.

    Needs minimum degree >= 2 and either three or more weak components, or
    two components not both complete symmetric bipartite.
    """
    if not theorem7_predicate(d):
        raise HypothesisError("both components are complete symmetric bipartite; dib is 2")
    comps = d.weak_components()
    colors = [0] * d.n
    if len(comps) >= 3:
        for i, comp in enumerate(comps[:3]):
            own = i + 1
            p, q = [c for c in (1, 2, 3) if c != own]
            _star_component(d, colors, comp, comp[0], own, p, q)
        for comp in comps[3:]:
            X, Y = _component_sides(d, comp)
            for v in X:
                colors[v] = 1
            for v in Y:
                colors[v] = 2
        return _finish(d, colors, "three-components", witness=[c[0] for c in comps[:3]])

    # two components: split the non-complete one around a non-digon cross pair
    for first, second in (comps, comps[::-1]):
        if is_complete_symmetric_bipartite(d, first):
            continue
        X, Y = _component_sides(d, first)
        for X, Y in ((X, Y), (Y, X)):
            for u in X:
                for v in Y:
                    if d.has_arc(u, v) and d.has_arc(v, u):
                        continue
                    for w in second:
                        colors = [0] * d.n
                        for x in X:
                            colors[x] = 2
                        for y in Y:
                            colors[y] = 3
                        colors[u] = colors[v] = 1
                        _star_component(d, colors, second, w, 1, 2, 3)
                        c = _try_colors(d, colors)
                        if c is not None:
                            return _finish(d, c.colors, "two-components", witness=(u, v, w))
    c = dib_exceeds(d, 2)
    if c is None:
        raise ConstructionError("no b-colouring with more than 2 colours exists")
    res = _finish(d, c.colors, "exact-fallback")
    res.notes.append("two-component template missed; used exact search")
    return res


# -- non-neighbourhood seeding ------------------------------------------------


def _classes_meeting_both(c: Coloring, bp: Bipartition) -> int:
    return sum(1 for cls in c.classes if cls & bp.A and cls & bp.B)


def theorem8_construct(d: Digraph, bp: Bipartition | None = None) -> ConstructionResult:
    """A b-colouring with at least 3 colours from the intersection covering condition.

    Seeds classes ``{v} + (vertices with no arc to v)`` across the covered
    side, gives leftover seed-side vertices one extra colour, then repairs
    with the class-dissolving reduction.
    """
    _, inter = theorem8_predicates(d, bp)
    if not inter:
        raise HypothesisError("intersection covering condition fails")
    bp = _require_bipartition(d, bp)

    def no_arc(x: int, y: int) -> bool:
        return not d.has_arc(x, y) and not d.has_arc(y, x)

    # seed side X, covered side Y: every y in Y has some x in X with no arc either way
    if all(any(no_arc(x, y) for x in bp.A) for y in bp.B):
        X, Y = sorted(bp.A), sorted(bp.B)
    else:
        X, Y = sorted(bp.B), sorted(bp.A)
    colors = [0] * d.n
    k = 0
    while any(colors[y] == 0 for y in Y):
        w = min(y for y in Y if colors[y] == 0)
        v = next((x for x in X if colors[x] == 0 and no_arc(x, w)), None)
        if v is None:
            raise ConstructionError(f"no uncoloured seed vertex is free of arcs to {w}")
        k += 1
        colors[v] = k
        for y in Y:
            if colors[y] == 0 and no_arc(v, y):
                colors[y] = k
    if any(colors[x] == 0 for x in X):
        k += 1
        for x in X:
            if colors[x] == 0:
                colors[x] = k
    seeded = Coloring(colors)
    notes = []
    trace = reduce_to_b_coloring(d, seeded)
    cur = seeded
    for step in trace.steps:
        meeting = _classes_meeting_both(cur, bp)
        if meeting < cur.k - 2:
            notes.append(f"before dropping colour {step.eliminated_color}: only {meeting} of {cur.k} classes meet both sides")
        cur, _ = reduce_once(d, cur, step.eliminated_color)
    final = trace.final
    assert final is not None
    if final.k <= 2:
        raise ConstructionError(
            f"repair ended with {final.k} colours; expected at least 3 (seeded with {seeded.k})"
        )
    res = _finish(d, final.colors, "seed+reduce", witness={"seeded": seeded, "steps": trace.steps})
    res.notes.extend(notes)
    for note in notes:
        log.info("theorem8_construct: %s", note)
    return res


# -- bad paths ----------------------------------------------------------------


@dataclass(frozen=True)
class BadPath:
    """Undirected path whose arcs alternate direction.

    With ``odd_sources`` the 1st, 3rd, ... vertices are sources on the path
    (x1 -> x2 <- x3 -> ...); otherwise they are sinks.
    """

    vertices: tuple[int, ...]
    odd_sources: bool

    @property
    def order(self) -> int:
        return len(self.vertices)

    def is_valid(self, d: Digraph) -> bool:
        if len(set(self.vertices)) != len(self.vertices):
            return False
        for i in range(len(self.vertices) - 1):
            a, b = self.vertices[i], self.vertices[i + 1]
            source_here = (i % 2 == 0) == self.odd_sources
            if source_here and not d.has_arc(a, b):
                return False
            if not source_here and not d.has_arc(b, a):
                return False
        return True


def _require_simple_bipartite(d: Digraph, bp: Bipartition | None) -> Bipartition:
    if not d.is_simple():
        raise HypothesisError("digraph has a digon")
    return _require_bipartition(d, bp)


def bad_paths(d: Digraph, order: int) -> Iterator[BadPath]:
    """Every bad path with exactly ``order`` vertices (both polarities, both ends)."""
    out, inn = d.out_masks, d.in_masks

    def extend(path: list[int], used: int, source_next: bool, odd_sources: bool):
        if len(path) == order:
            yield BadPath(tuple(path), odd_sources)
            return
        nb = out[path[-1]] if source_next else inn[path[-1]]
        for y in bits(nb & ~used):
            path.append(y)
            yield from extend(path, used | 1 << y, not source_next, odd_sources)
            path.pop()

    for s in range(d.n):
        for odd_sources in (True, False):
            yield from extend([s], 1 << s, odd_sources, odd_sources)


def max_bad_path(d: Digraph, bp: Bipartition | None = None, *, cap: int | None = None) -> BadPath:
    """A bad path of maximum order (search stops early once ``cap`` is reached)."""
    _require_simple_bipartite(d, bp)
    if d.n == 0:
        raise ValueError("empty digraph has no path")
    out, inn = d.out_masks, d.in_masks
    best: list = [BadPath((0,), True)]
    limit = cap if cap is not None else d.n

    class _Done(Exception):
        pass

    def extend(path: list[int], used: int, source_next: bool, odd_sources: bool) -> None:
        if len(path) > best[0].order:
            best[0] = BadPath(tuple(path), odd_sources)
            if best[0].order >= limit:
                raise _Done
        nb = out[path[-1]] if source_next else inn[path[-1]]
        for y in bits(nb & ~used):
            path.append(y)
            extend(path, used | 1 << y, not source_next, odd_sources)
            path.pop()

    try:
        for s in range(d.n):
            for odd_sources in (True, False):
                extend([s], 1 << s, odd_sources, odd_sources)
    except _Done:
        pass
    return best[0]


def _paint(n: int, A: frozenset[int], B: frozenset[int], fixed: dict[int, int],
           rest_a: int, rest_b: int) -> list[int]:
    colors = [0] * n
    for v in A:
        colors[v] = rest_a
    for v in B:
        colors[v] = rest_b
    for v, c in fixed.items():
        colors[v] = c
    return colors


def _template_candidates(d: Digraph, P: tuple[int, ...]) -> Iterator[tuple[str, list[int]]]:
    """Candidate 3-colourings for a bad path whose odd vertices are sources.

    Sources are taken to lie in side A. Each candidate is the colouring used
    for one case of the longest-bad-path analysis; callers verify them.
    """
    k = len(P)
    x = (None,) + P  # 1-based access
    bp = bipartition_of(d)
    assert bp is not None
    A, B = (bp.A, bp.B) if P[0] in bp.A else (bp.B, bp.A)
    arc = d.has_arc
    n = d.n

    if k >= 8:
        fixed = {x[1]: 1, x[4]: 1, x[7]: 1, x[2]: 2, x[5]: 2, x[8]: 2, x[3]: 3, x[6]: 3}
        yield "order-8", _paint(n, A, B, fixed, 1, 3)
    if k >= 7:
        if arc(x[7], x[2]):
            fixed = {x[3]: 1, x[6]: 1, x[4]: 2, x[7]: 2, x[2]: 3, x[5]: 3}
            yield "order-7-six-cycle", _paint(n, A, B, fixed, 1, 3)
        if arc(x[7], x[4]) and arc(x[1], x[4]):
            zs = [z for z in bits(d.out_masks[x[4]]) if z not in (x[1], x[3], x[5], x[7])]
            for z1, z2 in itertools.permutations(zs, 2):
                fixed = {x[1]: 1, x[4]: 1, x[5]: 1, x[2]: 2, x[7]: 2, z1: 2,
                         x[3]: 3, x[6]: 3, z2: 3}
                yield "order-7-hub", _paint(n, A, B, fixed, 3, 2)
    if k >= 6:
        if arc(x[1], x[6]):
            fixed = {x[5]: 1, x[2]: 1, x[4]: 2, x[1]: 2, x[6]: 3, x[3]: 3}
            yield "order-6-six-cycle", _paint(n, A, B, fixed, 1, 3)
        if arc(x[1], x[4]) and arc(x[3], x[6]):
            fixed = {x[1]: 1, x[6]: 1, x[3]: 2, x[4]: 2, x[2]: 3, x[5]: 3}
            yield "order-6-chords", _paint(n, A, B, fixed, 1, 3)
    if k >= 5 and arc(x[1], x[4]) and arc(x[5], x[2]):
        blocked = {x[1], x[3], x[5]}
        zs = [z for z in bits(d.out_masks[x[2]]) if z not in blocked]
        ws = [w for w in bits(d.out_masks[x[4]]) if w not in blocked]
        for z1, z2 in itertools.permutations(zs, 2):
            for w1, w2 in itertools.permutations(ws, 2):
                if (z1, z2) == (w1, w2):
                    for y1, y2 in itertools.permutations(
                        [y for y in bits(d.out_masks[z1]) if y not in (x[2], x[4])], 2
                    ):
                        fixed = {x[2]: 1, x[5]: 1, z1: 1, x[1]: 2, x[4]: 2, y2: 2,
                                 x[3]: 3, y1: 3, z2: 3}
                        yield "order-5-shared-pair", _paint(n, A, B, fixed, 1, 2)
                elif z1 == w1 and z2 != w2:
                    fixed = {x[1]: 1, x[4]: 1, z2: 1, x[5]: 2, z1: 2, x[2]: 3, x[3]: 3, w2: 3}
                    yield "order-5-one-shared", _paint(n, A, B, fixed, 3, 1)
                elif not {z1, z2} & {w1, w2}:
                    for y1 in bits(d.in_masks[w1]):
                        if y1 in (x[2], x[4]):
                            continue
                        fixed = {x[1]: 1, x[4]: 1, z1: 1, x[2]: 2, x[3]: 2, y1: 2, w2: 2,
                                 x[5]: 3, w1: 3, z2: 3}
                        yield "order-5-disjoint", _paint(n, A, B, fixed, 1, 2)
    if k >= 4 and arc(x[1], x[4]):
        blocked = {x[1], x[3]}
        zs = [z for z in bits(d.out_masks[x[2]]) if z not in blocked]
        ws = [w for w in bits(d.out_masks[x[4]]) if w not in blocked]
        for z1, z2 in itertools.permutations(zs, 2):
            for w1, w2 in itertools.permutations(ws, 2):
                if not {z1, z2} & {w1, w2}:
                    for y1 in B - {x[2], x[4]}:
                        if not (arc(y1, z1) and arc(y1, z2)):
                            continue
                        for y2 in B - {x[2], x[4], y1}:
                            if not (arc(y2, w1) and arc(y2, w2)):
                                continue
                            fixed = {x[1]: 1, y2: 1, z1: 1, w1: 1, x[2]: 2, x[3]: 2, w2: 2,
                                     x[4]: 3, y1: 3, z2: 3}
                            yield "order-4-disjoint", _paint(n, A, B, fixed, 2, 3)
                elif (z1, z2) == (w1, w2):
                    ys = sorted(
                        set(bits((d.out_masks[z1] | d.in_masks[x[1]]) & ~(1 << x[2] | 1 << x[4])))
                    )
                    for choice in itertools.product((1, 3), repeat=len(ys)):
                        fixed = {x[4]: 1, x[1]: 2, x[2]: 2, z1: 2, x[3]: 3, z2: 3}
                        fixed.update(zip(ys, choice))
                        yield "order-4-shared-pair", _paint(n, A, B, fixed, 2, 1)


def theorem9_construct(d: Digraph, bp: Bipartition | None = None,
                       *, path_budget: int = 200) -> ConstructionResult:
    """A 3-colour b-colouring of a simple bipartite digraph with minimum degree >= 2.

    Tries the case colourings attached to a longest bad path, then to other
    bad paths (up to ``path_budget``), and finally an exact search for a
    3-colour b-colouring. ``method`` tells which one succeeded.
    """
    bp = _require_simple_bipartite(d, bp)
    if d.min_degree() < 2:
        raise HypothesisError("minimum degree is below 2")
    rev = d.reverse()

    def attempt(P: BadPath) -> ConstructionResult | None:
        # odd-sink paths are odd-source paths of the reversed digraph, whose
        # b-colourings are exactly those of d
        g = d if P.odd_sources else rev
        for name, colors in _template_candidates(g, P.vertices):
            c = _try_colors(d, colors)
            if c is not None:
                return _finish(d, c.colors, f"template:{name}", witness=P)
        return None

    longest = max_bad_path(d, bp, cap=8)
    res = attempt(longest)
    if res is not None:
        return res
    tried = 0
    for order in range(min(longest.order, 8), 3, -1):
        for P in bad_paths(d, order):
            if tried >= path_budget:
                break
            tried += 1
            res = attempt(P)
            if res is not None:
                return res
    c = b_coloring_exists(d, 3)
    if c is None:
        raise ConstructionError("no 3-colour b-colouring exists; contradicts the minimum-degree bound")
    res = _finish(d, c.colors, "exact-fallback", witness=longest)
    res.notes.append(f"no template verified on {tried + 1} bad paths")
    return res


# -- balanced partitions ------------------------------------------------------


def balanced_partition_count(m: int, n: int) -> int:
    """Number of unordered partitions of m items into n parts of size floor/ceil(m/n)."""
    if n == 0:
        return 1 if m == 0 else 0
    q, re = divmod(m, n)
    return math.factorial(m) // (
        math.factorial(q) ** (n - re)
        * math.factorial(q + 1) ** re
        * math.factorial(n - re)
        * math.factorial(re)
    )


def balanced_partitions(items: Sequence[int], n: int) -> Iterator[list[tuple[int, ...]]]:
    """Every balanced n-partition of ``items`` exactly once (blocks led by their least item)."""
    m = len(items)
    q, re = divmod(m, n)

    def gen(rem: tuple[int, ...], big: int, small: int):
        if not rem:
            yield []
            return
        first, tail = rem[0], rem[1:]
        for size, nb, ns in ((q + 1, big - 1, small), (q, big, small - 1)):
            if nb < 0 or ns < 0 or size == 0:
                continue
            for comb in itertools.combinations(tail, size - 1):
                chosen = set(comb)
                rest = tuple(v for v in tail if v not in chosen)
                for more in gen(rest, nb, ns):
                    yield [(first,) + comb] + more

    yield from gen(tuple(items), re, n - re)


def theorem10_inequality(n: int, m: int, delta_A: int) -> bool:
    """2 n^2 < (m / (m - delta_A)) ** floor(m / n), evaluated exactly."""
    if n < 1 or m < n:
        return False
    if delta_A >= m:
        return True
    return Fraction(2 * n * n) < Fraction(m, m - delta_A) ** (m // n)


def _default_attempts(n: int, m: int) -> int:
    return max(1, math.ceil(10 * 2 * n * n * math.log(max(m, 2))))


def partition_coloring(
    d: Digraph,
    bp: Bipartition | None = None,
    attempts: int | None = None,
    seed: int = 0,
    *,
    exhaustive_limit: int = 10**6,
) -> ConstructionResult:
    """n colours with every A-vertex a b-vertex, from a balanced partition of B.

    A (the smaller side, size n) gets distinct colours; part i of a balanced
    n-partition of B gets colour i. The partition must give every A-vertex
    out- and in-neighbours in every part. Random partitions are drawn first,
    then all partitions are scanned if there are at most ``exhaustive_limit``.
    Raises :class:`PartitionNotFound` on a miss.
    """
    bp = _require_simple_bipartite(d, bp)
    if bp.n > bp.m:
        raise HypothesisError("side A must not be larger than side B")
    A, B = sorted(bp.A), sorted(bp.B)
    n, m = len(A), len(B)
    if n == 0:
        raise HypothesisError("side A is empty")
    attempts = _default_attempts(n, m) if attempts is None else attempts
    q, re = divmod(m, n)
    sizes = [q + 1] * re + [q] * (n - re)

    def good(parts: list[Sequence[int]]) -> bool:
        masks = [mask_of(p) for p in parts]
        return all(d.out_masks[a] & Y and d.in_masks[a] & Y for a in A for Y in masks)

    def result(parts: list[Sequence[int]], how: str) -> ConstructionResult:
        colors = [0] * d.n
        for i, a in enumerate(A):
            colors[a] = i + 1
        for i, part in enumerate(parts):
            for y in part:
                colors[y] = i + 1
        res = _finish(d, colors, how, witness=[tuple(p) for p in parts])
        b_vertices = {v for cr in res.report.classes for v in cr.b_vertices}
        if not set(A) <= b_vertices:
            raise ConstructionError("some A-vertex is not a b-vertex")
        return res

    rng = random.Random(seed)
    for _ in range(attempts):
        perm = B[:]
        rng.shuffle(perm)
        parts, pos = [], 0
        for s in sizes:
            parts.append(perm[pos:pos + s])
            pos += s
        if good(parts):
            return result(parts, "random-partition")
    if balanced_partition_count(m, n) <= exhaustive_limit:
        for parts in balanced_partitions(B, n):
            if good(parts):
                return result(parts, "exhaustive-partition")
        raise PartitionNotFound("no balanced partition works (exhaustive)")
    raise PartitionNotFound(f"no balanced partition found in {attempts} random attempts")


def corollary11_threshold(n: int, m: int, delta_A: int) -> bool:
    """Whether delta_A > m (1 - 2 ** (-1/p)) with floor(m/n) = p (1 + 2 log2 n).

    Whenever it holds, the balanced-partition inequality is checked to hold too.
    """
    if n < 1 or m < n:
        raise ValueError("need 1 <= n <= m")
    p = (m // n) / (1 + 2 * math.log2(n))
    if p <= 0:
        raise ValueError("p must be positive")
    ok = delta_A > m * (1 - 2 ** (-1 / p))
    if ok and not theorem10_inequality(n, m, delta_A):
        raise AssertionError(f"threshold holds but partition inequality fails for {(n, m, delta_A)}")
    return ok


# -- greedy -------------------------------------------------------------------


def is_orientation_knm(d: Digraph, bp: Bipartition) -> bool:
    """Exactly one arc on every cross pair and none inside a side."""
    for a in bp.A:
        for b in bp.B:
            if d.has_arc(a, b) == d.has_arc(b, a):
                return False
    return len(d.arcs) == bp.n * bp.m


def greedy_coloring(d: Digraph, bp: Bipartition | None = None) -> ConstructionResult:
    """n colours (n = |A|) with every A-vertex a b-vertex, built one A-vertex at a time.

    Requires a simple bipartite digraph with delta_A >= 2n(n-1), or an
    orientation of K_{n,m} with delta_A >= n^2. After the stage that
    introduces colour r+1 at most (r+1)^2 (orientation) or 2(r+1)r (general)
    B-vertices are coloured; exceeding that raises :class:`ConstructionError`.
    """
    bp = _require_simple_bipartite(d, bp)
    if bp.n > bp.m:
        raise HypothesisError("side A must not be larger than side B")
    X = sorted(bp.A)
    n = len(X)
    dA = bp.delta_A
    complete = is_orientation_knm(d, bp) and dA >= n * n
    if not complete and dA < 2 * n * (n - 1):
        raise HypothesisError(f"delta_A={dA} below 2n(n-1)={2 * n * (n - 1)}")
    bmask = bp.b_mask
    colour_of: dict[int, int] = {}

    def pick(nb: int, colour: int) -> None:
        free = [y for y in bits(nb & bmask) if y not in colour_of]
        if not free:
            raise ConstructionError(f"no uncoloured neighbour left for colour {colour}")
        colour_of[free[0]] = colour

    def ensure(nb: int, colour: int) -> None:
        if not any(colour_of.get(y) == colour for y in bits(nb & bmask)):
            pick(nb, colour)

    stages = []
    for r in range(1, n):
        new = X[r]
        for i in range(r):
            ensure(d.out_masks[new], i + 1)
            ensure(d.in_masks[new], i + 1)
        for i in range(r):
            ensure(d.out_masks[X[i]], r + 1)
            ensure(d.in_masks[X[i]], r + 1)
        budget = (r + 1) ** 2 if complete else 2 * (r + 1) * r
        stages.append((r + 1, len(colour_of), budget))
        if len(colour_of) > budget:
            raise ConstructionError(f"stage {r + 1} coloured {len(colour_of)} B-vertices, budget {budget}")
    colors = [0] * d.n
    for i, x in enumerate(X):
        colors[x] = i + 1
    for y in bp.B:
        colors[y] = colour_of.get(y, 1)
    res = _finish(d, colors, "greedy-orientation" if complete else "greedy-general", witness=stages)
    b_vertices = {v for cr in res.report.classes for v in cr.b_vertices}
    if not set(X) <= b_vertices:
        raise ConstructionError("some A-vertex is not a b-vertex")
    return res


# -- cross pairs --------------------------------------------------------------


def cross_pair_value(d: Digraph, y1: int, y2: int) -> int:
    """|N+(y1) & N-(y2)|."""
    return (d.out_masks[y1] & d.in_masks[y2]).bit_count()


def theorem13_inequality(c: int, m: int, delta_A: int) -> bool:
    """2 c^2 < ((m-2) / (m-2-(delta_A-1))) ** floor((m-2)/c); False when degenerate."""
    if c <= 0 or m - 2 < 1:
        return False
    den = m - 2 - (delta_A - 1)
    if den <= 0:
        return False
    return Fraction(2 * c * c) < Fraction(m - 2, den) ** ((m - 2) // c)


def cross_pair_coloring(
    d: Digraph,
    bp: Bipartition | None,
    y1: int,
    y2: int,
    attempts: int | None = None,
    seed: int = 0,
) -> ConstructionResult:
    """c+1 colours from the common set C = N+(y1) & N-(y2), c = |C|.

    Colours C and B - {y1, y2} with a balanced-partition colouring, then puts
    everything else (including y1, y2) in one extra class.
    """
    bp = _require_simple_bipartite(d, bp)
    if bp.n > bp.m:
        bp = bp.swapped()
    if y1 == y2 or y1 not in bp.B or y2 not in bp.B:
        raise HypothesisError("y1 and y2 must be distinct vertices of side B")
    C = sorted(bits(d.out_masks[y1] & d.in_masks[y2]))
    c, m = len(C), bp.m
    if not theorem13_inequality(c, m, bp.delta_A):
        raise HypothesisError(f"inequality fails (c={c}, m={m}, delta_A={bp.delta_A})")
    rest_b = sorted(bp.B - {y1, y2})
    sub, back = d.induced(C + rest_b)
    index = {v: i for i, v in enumerate(back)}
    sub_bp = Bipartition(frozenset(index[v] for v in C), frozenset(index[v] for v in rest_b), sub)
    inner = partition_coloring(sub, sub_bp, attempts=attempts, seed=seed)
    colors = [c + 1] * d.n
    for i, v in enumerate(back):
        colors[v] = inner.coloring[i]
    res = _finish(d, colors, f"cross-pair/{inner.method}", witness={"C": C, "parts": inner.witness})
    top = res.report.classes[c]
    if y1 not in top.b_plus or y2 not in top.b_minus:
        raise ConstructionError("y1/y2 lost their b+/b- role in the extra class")
    return res


# -- one-directional bicliques ------------------------------------------------


@dataclass(frozen=True)
class Biclique:
    """r-subsets with every arc from ``left`` to ``right`` (reversed when not ``forward``)."""

    left: tuple[int, ...]
    right: tuple[int, ...]
    forward: bool = True

    @property
    def r(self) -> int:
        return len(self.left)

    def is_valid(self, d: Digraph) -> bool:
        if len(self.left) != len(self.right):
            return False
        return all(
            d.has_arc(a, b) if self.forward else d.has_arc(b, a)
            for a in self.left
            for b in self.right
        )


def theorem14_threshold(r: int) -> float:
    """r 2^r (1 + 2^-r)^r + 2r - 1."""
    return r * 2**r * (1 + 2**-r) ** r + 2 * r - 1


def find_one_directional_biclique(d: Digraph, bp: Bipartition | None, r: int) -> Biclique | None:
    """r-subsets A' of A and B' of B with all arcs A'->B' (or, failing that, all B'->A')."""
    bp = _require_bipartition(d, bp)
    if not is_orientation_knm(d, bp):
        raise HypothesisError("digraph is not an orientation of a complete bipartite graph")
    if r < 1:
        raise ValueError("r must be positive")
    bmask = bp.b_mask
    for forward, nb in ((True, d.out_masks), (False, d.in_masks)):
        for sub in itertools.combinations(sorted(bp.A), r):
            common = bmask
            for a in sub:
                common &= nb[a]
                if common.bit_count() < r:
                    break
            else:
                right = tuple(itertools.islice(bits(common), r))
                return Biclique(tuple(sub), right, forward)
    return None


def biclique_coloring(d: Digraph, bp: Bipartition | None, biclique: Biclique) -> ConstructionResult:
    """r colours: pair classes {x_i, y_i}, rest of A with colour 1, rest of B with colour 2."""
    bp = _require_bipartition(d, bp)
    if not biclique.is_valid(d) or not set(biclique.left) <= bp.A or not set(biclique.right) <= bp.B:
        raise HypothesisError("not a one-directional biclique between the sides")
    r = biclique.r
    colors = [0] * d.n
    for v in bp.A:
        colors[v] = 1
    for v in bp.B:
        colors[v] = 2 if r >= 2 else 1
    for i, (x, y) in enumerate(zip(biclique.left, biclique.right)):
        colors[x] = colors[y] = i + 1
    return _finish(d, colors, "biclique-stars", witness=biclique)
