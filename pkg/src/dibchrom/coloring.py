"""Colourings of digraphs and their verification.

A colouring maps every vertex to a colour in ``1..k`` and uses all ``k``
colours. A vertex is a *b+-vertex* if its out-neighbourhood meets every
other colour class, a *b--vertex* if its in-neighbourhood does. A
*b-colouring* is an acyclic colouring whose every class holds both kinds
(possibly the same vertex).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .digraph import Bipartition, Digraph, bits, has_cycle_within

__all__ = [
    "Coloring",
    "ClassReport",
    "VerificationReport",
    "is_acyclic_coloring",
    "b_plus_vertices",
    "b_minus_vertices",
    "verify",
    "class_color_spread",
]


class Coloring:
    """Total, surjective vertex colouring with colours ``1..k``."""

    __slots__ = ("colors", "k", "_masks")

    def __init__(self, colors: Sequence[int]):
        colors = tuple(int(c) for c in colors)
        k = max(colors, default=0)
        present = set(colors)
        if any(c < 1 for c in colors):
            raise ValueError("colours must be positive integers")
        if present != set(range(1, k + 1)):
            missing = sorted(set(range(1, k + 1)) - present)
            raise ValueError(f"colouring is not surjective: colours {missing} unused")
        masks = [0] * k
        for v, c in enumerate(colors):
            masks[c - 1] |= 1 << v
        self.colors = colors
        self.k = k
        self._masks = tuple(masks)

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]]) -> Coloring:
        colors = [0] * n
        for i, part in enumerate(classes, start=1):
            for v in part:
                if colors[v]:
                    raise ValueError(f"vertex {v} placed in two classes")
                colors[v] = i
        if 0 in colors:
            raise ValueError(f"vertex {colors.index(0)} left uncoloured")
        return cls(colors)

    @classmethod
    def from_mapping(cls, n: int, mapping: Mapping[int, int]) -> Coloring:
        if set(mapping) != set(range(n)):
            raise ValueError("mapping must colour every vertex exactly once")
        return cls([mapping[v] for v in range(n)])

    @property
    def n(self) -> int:
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Coloring) and self.colors == other.colors

    def __hash__(self) -> int:
        return hash(self.colors)

    def __repr__(self) -> str:
        return f"Coloring({list(self.colors)})"

    def class_mask(self, i: int) -> int:
        return self._masks[i - 1]

    def color_class(self, i: int) -> frozenset[int]:
        return frozenset(bits(self._masks[i - 1]))

    @property
    def classes(self) -> list[frozenset[int]]:
        return [self.color_class(i) for i in range(1, self.k + 1)]

    def canonical(self) -> Coloring:
        """Colours renumbered in order of first appearance."""
        order: dict[int, int] = {}
        for c in self.colors:
            order.setdefault(c, len(order) + 1)
        return Coloring([order[c] for c in self.colors])


def _check_sizes(d: Digraph, c: Coloring) -> None:
    if d.n != c.n:
        raise ValueError(f"colouring covers {c.n} vertices, digraph has {d.n}")


def is_acyclic_coloring(d: Digraph, c: Coloring) -> bool:
    _check_sizes(d, c)
    return not any(has_cycle_within(d, c.class_mask(i)) for i in range(1, c.k + 1))


def _dominating(nbr: Sequence[int], c: Coloring, i: int) -> list[int]:
    others = [c.class_mask(j) for j in range(1, c.k + 1) if j != i]
    return [x for x in bits(c.class_mask(i)) if all(nbr[x] & m for m in others)]


def b_plus_vertices(d: Digraph, c: Coloring, i: int) -> list[int]:
    """Vertices of class ``i`` with an out-neighbour in every other class."""
    _check_sizes(d, c)
    return _dominating(d.out_masks, c, i)


def b_minus_vertices(d: Digraph, c: Coloring, i: int) -> list[int]:
    """Vertices of class ``i`` with an in-neighbour in every other class."""
    _check_sizes(d, c)
    return _dominating(d.in_masks, c, i)


@dataclass(frozen=True)
class ClassReport:
    color: int
    acyclic: bool
    b_plus: tuple[int, ...]
    b_minus: tuple[int, ...]
    b_vertices: tuple[int, ...]
    has_b_pair: bool
    witness_pair: tuple[int, int] | None

    @property
    def good(self) -> bool:
        return bool(self.b_plus) and bool(self.b_minus)


@dataclass(frozen=True)
class VerificationReport:
    classes: tuple[ClassReport, ...]
    is_acyclic: bool
    is_b_coloring: bool

    def failure_reason(self) -> str | None:
        for cr in self.classes:
            if not cr.acyclic:
                return f"class {cr.color} contains a directed cycle"
        for cr in self.classes:
            if not cr.b_plus:
                return f"class {cr.color} lacks b⁺-vertex"
            if not cr.b_minus:
                return f"class {cr.color} lacks b⁻-vertex"
        return None

    def describe(self) -> str:
        acyc = "yes" if self.is_acyclic else "NO"
        if self.is_b_coloring:
            return f"acyclic: {acyc}, b-coloring: yes"
        return f"acyclic: {acyc}, b-coloring: NO ({self.failure_reason()})"

    def to_dict(self) -> dict:
        return {
            "is_acyclic": self.is_acyclic,
            "is_b_coloring": self.is_b_coloring,
            "classes": [
                {
                    "color": cr.color,
                    "acyclic": cr.acyclic,
                    "b_plus": [v + 1 for v in cr.b_plus],
                    "b_minus": [v + 1 for v in cr.b_minus],
                    "b_vertices": [v + 1 for v in cr.b_vertices],
                    "b_pair": cr.has_b_pair,
                    "witness_pair": None if cr.witness_pair is None else [v + 1 for v in cr.witness_pair],
                }
                for cr in self.classes
            ],
        }


def verify(d: Digraph, c: Coloring) -> VerificationReport:
    """Full audit: acyclicity and b+/b- inventory of every class."""
    _check_sizes(d, c)
    reports = []
    for i in range(1, c.k + 1):
        plus = tuple(_dominating(d.out_masks, c, i))
        minus = tuple(_dominating(d.in_masks, c, i))
        bv = tuple(sorted(set(plus) & set(minus)))
        pair = (plus[0], minus[0]) if plus and minus else None
        reports.append(
            ClassReport(
                color=i,
                acyclic=not has_cycle_within(d, c.class_mask(i)),
                b_plus=plus,
                b_minus=minus,
                b_vertices=bv,
                has_b_pair=pair is not None,
                witness_pair=pair,
            )
        )
    acyclic = all(r.acyclic for r in reports)
    return VerificationReport(
        classes=tuple(reports),
        is_acyclic=acyclic,
        is_b_coloring=acyclic and all(r.good for r in reports),
    )


def class_color_spread(d: Digraph, bp: Bipartition, c: Coloring) -> tuple[int, int]:
    """Number of distinct colours on side A and on side B."""
    _check_sizes(d, c)
    return len({c[v] for v in bp.A}), len({c[v] for v in bp.B})
