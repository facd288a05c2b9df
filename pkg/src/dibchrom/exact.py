"""Exact dichromatic and dib-chromatic numbers by pruned exhaustive search.

These are the ground-truth oracles for every bound and construction in the
package, so the dib search deliberately starts from an elementary counting
bound rather than from any of the bounds it is used to check.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

from . import kernels
from .coloring import Coloring
from .digraph import Bipartition, Digraph, bipartition_of, bits, independence_number

__all__ = [
    "HypothesisError",
    "SearchLimitExceeded",
    "SolveResult",
    "BoundsReport",
    "exact_dc",
    "exact_dib",
    "b_coloring_exists",
    "dib_exceeds",
    "feasible_ks",
    "degree_bound",
    "bounds",
    "is_complete_symmetric_bipartite",
    "theorem7_predicate",
    "theorem8_predicates",
]

log = logging.getLogger(__name__)

DC_DESK_LIMIT = 12
DIB_DESK_LIMIT = 10


class HypothesisError(ValueError):
    """The digraph does not satisfy the hypothesis of the requested result."""


class SearchLimitExceeded(RuntimeError):
    pass


@dataclass
class SolveResult:
    value: int
    witness: Coloring
    nodes_expanded: int
    elapsed: float = field(compare=False)
    backend: str = field(default=kernels.BACKEND, compare=False)

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "value": self.value,
            "witness": list(self.witness.colors),
            "nodes_expanded": self.nodes_expanded,
        }
        if timing:
            out["elapsed"] = self.elapsed
        return out


def _smallest_last_order(d: Digraph) -> list[int]:
    """Degeneracy ordering of the underlying graph, densest core first."""
    nbr = [d.neighbor_mask(v) for v in range(d.n)]
    live = (1 << d.n) - 1
    removed = []
    while live:
        v = min(bits(live), key=lambda x: ((nbr[x] & live).bit_count(), x))
        removed.append(v)
        live &= ~(1 << v)
    return removed[::-1]


def _run(d: Digraph, k: int, need_b: bool, node_limit: int, backend: str | None):
    status, cols, nodes = kernels.search(
        d.n, d.out_masks, d.in_masks, k, need_b, node_limit, backend=backend
    )
    if status == kernels.LIMIT:
        raise SearchLimitExceeded(f"node limit {node_limit} hit at k={k}")
    return cols, nodes


def exact_dc(d: Digraph, *, node_limit: int = 0, backend: str | None = None) -> SolveResult:
    """Minimum number of colours in an acyclic colouring."""
    if d.n > DC_DESK_LIMIT:
        log.warning("exact_dc on %d vertices exceeds desk scale (%d)", d.n, DC_DESK_LIMIT)
    t0 = time.perf_counter()
    if d.n == 0:
        return SolveResult(0, Coloring([]), 0, 0.0)
    order = _smallest_last_order(d)
    pos = {v: i for i, v in enumerate(order)}
    relabelled = d.relabel([pos[v] for v in range(d.n)])
    total = 0
    for k in range(1, d.n + 1):
        cols, nodes = _run(relabelled, k, False, node_limit, backend)
        total += nodes
        if cols is not None:
            witness = Coloring([cols[pos[v]] + 1 for v in range(d.n)]).canonical()
            return SolveResult(k, witness, total, time.perf_counter() - t0)
    raise AssertionError("singleton classes are always acyclic")  # pragma: no cover


def degree_bound(d: Digraph) -> int:
    """Largest k with k vertices of out-degree >= k-1 and k of in-degree >= k-1.

    Each of k classes needs its own b+ vertex (out-degree at least k-1) and
    its own b- vertex, so no b-colouring can use more colours.
    """
    ds = d.degree_summary()
    best = 0
    for k in range(1, d.n + 1):
        if (sum(1 for x in ds.out_degrees if x >= k - 1) >= k
                and sum(1 for x in ds.in_degrees if x >= k - 1) >= k):
            best = k
    return best


def b_coloring_exists(
    d: Digraph, k: int, *, node_limit: int = 0, backend: str | None = None
) -> Coloring | None:
    """An acyclic b-colouring with exactly ``k`` colours, or ``None``."""
    if k < 1 or k > degree_bound(d):
        return None
    cols, _ = _run(d, k, True, node_limit, backend)
    return None if cols is None else Coloring([c + 1 for c in cols])


def exact_dib(d: Digraph, *, node_limit: int = 0, backend: str | None = None) -> SolveResult:
    """Maximum number of colours in an acyclic b-colouring.

    Every k from the degree bound downwards is tested on its own; nothing
    assumes that feasibility is monotone in k.
    """
    if d.n > DIB_DESK_LIMIT:
        log.warning("exact_dib on %d vertices exceeds desk scale (%d)", d.n, DIB_DESK_LIMIT)
    t0 = time.perf_counter()
    if d.n == 0:
        return SolveResult(0, Coloring([]), 0, 0.0)
    total = 0
    for k in range(degree_bound(d), 0, -1):
        cols, nodes = _run(d, k, True, node_limit, backend)
        total += nodes
        if cols is not None:
            return SolveResult(k, Coloring([c + 1 for c in cols]), total, time.perf_counter() - t0)
    raise RuntimeError(f"no acyclic b-colouring found for {d!r}")


def dib_exceeds(
    d: Digraph, t: int, *, node_limit: int = 0, backend: str | None = None
) -> Coloring | None:
    """A b-colouring with more than ``t`` colours if one exists, else ``None``.

    Tries k = t+1, t+2, ... up to the degree bound, returning the first hit.
    """
    for k in range(t + 1, degree_bound(d) + 1):
        c = b_coloring_exists(d, k, node_limit=node_limit, backend=backend)
        if c is not None:
            return c
    return None


def feasible_ks(d: Digraph, *, backend: str | None = None) -> list[int]:
    """Every k for which an acyclic b-colouring with k colours exists."""
    return [k for k in range(1, degree_bound(d) + 1)
            if b_coloring_exists(d, k, backend=backend) is not None]


@dataclass
class BoundsReport:
    lower: dict[str, int]
    upper: dict[str, int]

    @property
    def best_lower(self) -> int:
        return max(self.lower.values(), default=0)

    @property
    def best_upper(self) -> int:
        return min(self.upper.values())

    def consistent(self) -> bool:
        return self.best_lower <= self.best_upper

    def to_dict(self) -> dict:
        return {"lower": dict(self.lower), "upper": dict(self.upper)}


def bounds(d: Digraph, *, with_dc: bool = True) -> BoundsReport:
    """All applicable lower and upper bounds on dib, keyed by what they rest on."""
    lower: dict[str, int] = {}
    upper: dict[str, int] = {"order": d.n, "degree": degree_bound(d)}
    if d.n == 0:
        return BoundsReport(lower, upper)
    if with_dc:
        lower["dichromatic"] = exact_dc(d).value
    beta, _ = independence_number(d)
    upper["order-minus-independence"] = d.n - beta + 1
    bp = bipartition_of(d)
    if bp is not None:
        small = bp.smaller_first()
        if d.is_weakly_connected():
            upper["bipartite-smaller-side"] = small.n + 1
        if d.min_degree() >= 2:
            lower["bipartite-min-degree-2"] = 2
            if d.is_simple():
                lower["simple-bipartite-min-degree-2"] = 3
        if d.is_simple() and _no_source_or_no_sink(d, small.B):
            upper["no-source-or-sink-in-larger-side"] = small.n
    return BoundsReport(lower, upper)


def _no_source_or_no_sink(d: Digraph, side: frozenset[int]) -> bool:
    no_source = all(d.in_masks[v] for v in side)
    no_sink = all(d.out_masks[v] for v in side)
    return no_source or no_sink


# -- predicates for the bipartite characterisations -------------------------


def is_complete_symmetric_bipartite(d: Digraph, vertices: list[int] | None = None) -> bool:
    """Whether the (sub)digraph on ``vertices`` is a complete symmetric bipartite digraph."""
    sub = d if vertices is None else d.induced(vertices)[0]
    bp = bipartition_of(sub)
    if bp is None or not bp.A or not bp.B:
        return False
    return all(sub.has_arc(a, b) and sub.has_arc(b, a) for a in bp.A for b in bp.B)


def _require_bipartite_min2(d: Digraph) -> Bipartition:
    bp = bipartition_of(d)
    if bp is None:
        raise HypothesisError("digraph is not bipartite")
    if d.min_degree() < 2:
        raise HypothesisError("minimum degree is below 2")
    return bp


def theorem7_predicate(d: Digraph) -> bool:
    """For disconnected bipartite digraphs of minimum degree >= 2: whether dib > 2.

    True iff there are at least three weak components, or exactly two and
    not both are complete symmetric bipartite.
    """
    _require_bipartite_min2(d)
    comps = d.weak_components()
    if len(comps) < 2:
        raise HypothesisError("digraph is weakly connected")
    if len(comps) >= 3:
        return True
    return not all(is_complete_symmetric_bipartite(d, comp) for comp in comps)


def theorem8_predicates(d: Digraph, bp: Bipartition | None = None) -> tuple[bool, bool]:
    """Cross-side non-neighbourhood covering conditions.

    Returns ``(union, intersection)``. ``union`` holds when every vertex of
    A has a partner in B it does not share a digon with, or every vertex of
    B has such a partner in A. ``intersection`` is the same with "no arc in
    either direction" in place of "no digon".
    """
    found = _require_bipartite_min2(d)
    if not d.is_weakly_connected():
        raise HypothesisError("digraph is not weakly connected")
    bp = bp or found
    bp.validate()

    def covered(side, other, rel) -> bool:
        return all(any(rel(x, y) for y in other) for x in side)

    def no_digon(x, y):
        return not (d.has_arc(x, y) and d.has_arc(y, x))

    def no_arc(x, y):
        return not d.has_arc(x, y) and not d.has_arc(y, x)

    union = covered(bp.A, bp.B, no_digon) or covered(bp.B, bp.A, no_digon)
    inter = covered(bp.A, bp.B, no_arc) or covered(bp.B, bp.A, no_arc)
    return union, inter
