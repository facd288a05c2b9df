"""Collapse an acyclic colouring into an acyclic b-colouring.

A class with neither a b-vertex nor a (b+, b-) pair is dissolved: each of
its vertices moves into a class it has no out-neighbour in (or, on the
mirrored side, no in-neighbour in), which cannot create a cycle. Repeating
until every class is good always ends in a b-colouring, because a single
class is trivially good.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Literal

from .coloring import Coloring, is_acyclic_coloring, verify
from .digraph import Digraph, bits

__all__ = [
    "NotReducible",
    "ReductionStep",
    "ReductionTrace",
    "v_sets",
    "reduce_once",
    "reduce_to_b_coloring",
]

Side = Literal["plus", "minus"]


class NotReducible(ValueError):
    """The target class already has b-structure (or there is nothing to merge into)."""


@dataclass(frozen=True)
class ReductionStep:
    eliminated_color: int
    side: Side
    buckets: dict[int, frozenset[int]]
    resulting_k: int

    def describe(self, index: int) -> str:
        parts = ", ".join(
            f"{j}←{{{','.join(str(v + 1) for v in sorted(vs))}}}"
            for j, vs in sorted(self.buckets.items())
            if vs
        )
        return f"step {index}: drop color {self.eliminated_color} via {self.side}, buckets: {parts}"


@dataclass
class ReductionTrace:
    initial: Coloring
    steps: list[ReductionStep] = field(default_factory=list)
    final: Coloring | None = None


def v_sets(d: Digraph, c: Coloring, target: int) -> dict[int, tuple[frozenset[int], frozenset[int]]]:
    """For each vertex of ``target``: the other colours missing from its out- and in-neighbourhood."""
    others = [j for j in range(1, c.k + 1) if j != target]
    result = {}
    for x in bits(c.class_mask(target)):
        vp = frozenset(j for j in others if d.out_masks[x] & c.class_mask(j) == 0)
        vm = frozenset(j for j in others if d.in_masks[x] & c.class_mask(j) == 0)
        result[x] = (vp, vm)
    return result


def reduce_once(d: Digraph, c: Coloring, target: int) -> tuple[Coloring, ReductionStep]:
    """Dissolve class ``target`` into the other classes.

    Raises :class:`NotReducible` if the class has a b-vertex or a b-pair.
    Surviving classes keep their order; colours above ``target`` shift down.
    """
    if c.k < 2:
        raise NotReducible("a single class cannot be dissolved")
    if not 1 <= target <= c.k:
        raise ValueError(f"no colour {target} in a {c.k}-colouring")
    vs = v_sets(d, c, target)
    has_plus = any(not vp for vp, _ in vs.values())
    has_minus = any(not vm for _, vm in vs.values())
    if has_plus and has_minus:
        raise NotReducible(f"class {target} has a b-vertex or b-pair")

    if all(vp for vp, _ in vs.values()):
        side: Side = "plus"
        pick = 0
    elif all(vm for _, vm in vs.values()):
        side = "minus"
        pick = 1
    else:  # pragma: no cover - would contradict the side dichotomy
        raise AssertionError(f"neither side covers class {target}; implementation bug")

    buckets: dict[int, set[int]] = {j: set() for j in range(1, c.k + 1) if j != target}
    placed = set()
    for j in sorted(buckets):
        for x in sorted(vs):
            if x not in placed and j in vs[x][pick]:
                buckets[j].add(x)
                placed.add(x)
    assert placed == set(vs), "buckets must cover the dissolved class"

    colors = list(c.colors)
    for j, xs in buckets.items():
        for x in xs:
            colors[x] = j
    colors = [col - 1 if col > target else col for col in colors]
    new = Coloring(colors)
    if not is_acyclic_coloring(d, new):  # pragma: no cover
        raise AssertionError("merge produced a directed cycle; implementation bug")
    step = ReductionStep(target, side, {j: frozenset(b) for j, b in buckets.items()}, new.k)
    return new, step


def reduce_to_b_coloring(
    d: Digraph,
    c: Coloring,
    choose: Callable[[list[int]], int] = min,
) -> ReductionTrace:
    """Dissolve bad classes until the colouring is a b-colouring.

    ``choose`` picks which bad class to dissolve next (default: lowest colour).
    """
    if not is_acyclic_coloring(d, c):
        raise ValueError("reduction needs an acyclic colouring")
    trace = ReductionTrace(initial=c)
    cur = c
    while True:
        report = verify(d, cur)
        bad = [cr.color for cr in report.classes if not cr.good]
        if not bad:
            break
        cur, step = reduce_once(d, cur, choose(bad))
        trace.steps.append(step)
    trace.final = cur
    return trace
