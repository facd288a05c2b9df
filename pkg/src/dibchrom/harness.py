"""Corpus-driven checking of the bounds and constructions.

A :class:`CheckSpec` names a claim and a corpus. :func:`run_check` builds
every instance deterministically from the check seed, evaluates the claim on
each (optionally across a process pool), and aggregates a
:class:`CheckReport` whose canonical JSON does not depend on the worker
count or on scheduling.
"""
from __future__ import annotations

import hashlib
import itertools
import json
import logging
import math
import os
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .coloring import Coloring, class_color_spread, verify
from .constructions import (
    ConstructionError,
    balanced_partition_count,
    balanced_partitions,
    biclique_coloring,
    cross_pair_coloring,
    find_one_directional_biclique,
    greedy_coloring,
    max_bad_path,
    partition_coloring,
    theorem7_construct,
    theorem8_construct,
    theorem9_construct,
    theorem10_inequality,
    theorem13_inequality,
    theorem14_threshold,
)
from .dgf import format_coloring, format_dgf
from .digraph import (
    FAMILIES,
    HARD_ENUMERATION_CAP,
    Bipartition,
    Digraph,
    bipartition_of,
    disjoint_union,
    generate,
    independence_number,
)
from .exact import (
    HypothesisError,
    b_coloring_exists,
    dib_exceeds,
    exact_dc,
    exact_dib,
    feasible_ks,
    theorem7_predicate,
    theorem8_predicates,
)
from .reduction import NotReducible, reduce_once, reduce_to_b_coloring

__all__ = [
    "Segment",
    "CheckSpec",
    "CheckReport",
    "CHECKS",
    "ASSERT_CHECKS",
    "EXPLORE_CHECKS",
    "default_segments",
    "run_check",
    "resolve_workers",
]

log = logging.getLogger(__name__)


# -- specs and reports ----------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    """A named slice of a corpus: ``count`` instances from one builder."""

    name: str
    builder: str
    count: int
    params: tuple[tuple[str, object], ...] = ()

    def param(self, key: str, default=None):
        return dict(self.params).get(key, default)

    def to_dict(self) -> dict:
        return {"name": self.name, "builder": self.builder, "count": self.count,
                "params": {k: v for k, v in self.params}}


@dataclass(frozen=True)
class CheckSpec:
    """Which claim to check, on which corpus, and whether failures count.

    Leave ``segments`` empty to use the claim's default corpus.
    """

    theorem: str
    segments: tuple[Segment, ...] = ()
    mode: str | None = None
    seed: int = 0

    def resolved_mode(self) -> str:
        if self.theorem not in CHECKS:
            raise ValueError(f"unknown theorem id {self.theorem!r}; known: {', '.join(sorted(CHECKS))}")
        mode = self.mode or ("explore" if self.theorem in EXPLORE_CHECKS else "assert")
        if mode not in ("assert", "explore"):
            raise ValueError(f"mode must be 'assert' or 'explore', got {mode!r}")
        if mode == "assert" and self.theorem in EXPLORE_CHECKS:
            raise ValueError(f"{self.theorem} is exploratory and cannot run in assert mode")
        return mode

    def resolved_segments(self) -> tuple[Segment, ...]:
        return self.segments or default_segments(self.theorem)


@dataclass
class CheckReport:
    theorem: str
    mode: str
    seed: int
    corpus: list[dict]
    instances: int
    skipped: int
    violations: list[dict]
    notable: list[dict]
    summary: dict[str, int]
    wall_time: float = field(default=0.0, compare=False)

    @property
    def ok(self) -> bool:
        return self.mode == "explore" or not self.violations

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "theorem": self.theorem,
            "mode": self.mode,
            "seed": self.seed,
            "corpus": self.corpus,
            "instances": self.instances,
            "skipped": self.skipped,
            "violations": self.violations,
            "notable": self.notable,
            "summary": self.summary,
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def canonical_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def headline(self) -> str:
        return f"tested {self.instances} instances, {len(self.violations)} violations"


# -- deterministic seeding --------------------------------------------------------


def derive_seed(*parts: object) -> int:
    """A 63-bit seed from the check seed, segment name and instance index."""
    digest = hashlib.sha256(":".join(map(str, parts)).encode()).digest()
    return int.from_bytes(digest[:8], "big") >> 1


# -- corpus builders ------------------------------------------------------------------


Info = dict


def _enumerated(n: int, index: int) -> Digraph:
    pairs = list(itertools.combinations(range(n), 2))
    arcs = []
    for u, v in pairs:
        index, s = divmod(index, 4)
        if s & 1:
            arcs.append((u, v))
        if s & 2:
            arcs.append((v, u))
    return Digraph(n, frozenset(arcs))


def _relabelled(d: Digraph, rng: random.Random) -> Digraph:
    perm = list(range(d.n))
    rng.shuffle(perm)
    return d.relabel(perm)


def _retry(rng: random.Random, make: Callable[[random.Random], Digraph | None], what: str) -> Digraph:
    for _ in range(1000):
        d = make(rng)
        if d is not None:
            return d
    raise ValueError(f"could not sample {what}")


def _b_random_digraph(seg: Segment, rng: random.Random) -> tuple[Digraph, Info]:
    n = rng.randint(seg.param("min_n", 2), seg.param("max_n", 7))
    p = rng.choice((0.2, 0.35, 0.5, 0.65, 0.8))
    return generate("random", seed=rng.getrandbits(63), n=n, p=p), {}


def _sample_bipartite(rng: random.Random, a: int, b: int, delta: int, simple: bool,
                      densities: tuple[float, ...] = (0.2, 0.35, 0.5, 0.7, 0.9)) -> Digraph | None:
    try:
        return generate("random-bipartite", seed=rng.getrandbits(63), n=a, m=b, delta=delta,
                        simple=simple, p=rng.choice(densities))
    except ValueError:
        return None


def _b_connected_bipartite(seg: Segment, rng: random.Random) -> tuple[Digraph, Info]:
    """Weakly connected bipartite digraph of order <= max_order, sides both nonempty."""
    max_order = seg.param("max_order", 9)
    delta = seg.param("delta", 0)
    simple = seg.param("simple")

    def make(r: random.Random) -> Digraph | None:
        total = r.randint(max(2, 4 * delta if simple else 2 * delta), max_order)
        a = r.randint(1, total // 2)
        s = r.random() < 0.5 if simple is None else simple
        d = _sample_bipartite(r, a, total - a, delta, s)
        if d is None or not d.is_weakly_connected():
            return None
        return _relabelled(d, r)

    return _retry(rng, make, "connected bipartite digraph"), {}


_SMALL_SIDES = ((2, 2), (2, 3), (3, 3), (2, 4), (3, 4))


def _b_disconnected_bipartite(seg: Segment, rng: random.Random) -> tuple[Digraph, Info]:
    """Union of 2 or 3 bipartite components, each of minimum degree >= 2."""
    max_order = seg.param("max_order", 9)
    comps = seg.param("components", (2,))

    def make(r: random.Random) -> Digraph | None:
        count = r.choice(comps)
        sides = [s for s in _SMALL_SIDES if sum(s) <= max_order - 4 * (count - 1)]
        parts = []
        for _ in range(count):
            a, b = r.choice(sides)
            g = _sample_bipartite(r, a, b, 2, False)
            if g is None or not g.is_weakly_connected():
                return None
            parts.append(g)
        if sum(g.n for g in parts) > max_order:
            return None
        return _relabelled(disjoint_union(*parts), r)

    return _retry(rng, make, "disconnected bipartite digraph"), {}


def _b_fixed(seg: Segment, rng: random.Random) -> tuple[Digraph, Info]:
    k22 = generate("complete-symmetric-bipartite", n=2, m=2)
    copies = seg.param("copies")
    return disjoint_union(*([k22] * copies)), {"expect": seg.param("expect")}


def _b_simple_bipartite_min2(seg: Segment, rng: random.Random) -> tuple[Digraph, Info]:
    lo, hi = seg.param("min_part", 4), seg.param("max_part", 6)

    def make(r: random.Random) -> Digraph | None:
        a, b = sorted((r.randint(lo, hi), r.randint(lo, hi)))
        d = _sample_bipartite(r, a, b, 2, True)
        if d is None or not d.is_weakly_connected():
            return None
        return _relabelled(d, r)

    return _retry(rng, make, "simple bipartite digraph with minimum degree 2"), {}


def _b_circulant(seg: Segment, rng: random.Random) -> tuple[Digraph, Info]:
    part = rng.randint(seg.param("min_part", 4), seg.param("max_part", 8))
    return generate("circulant-2-regular-bipartite", seed=rng.getrandbits(63), part=part), {}


def _a_dense_bipartite(n: int, m: int, delta: int, rng: random.Random) -> Digraph:
    """Simple bipartite digraph where every A-vertex has >= delta out- and in-arcs.

    Needs m > 2 delta, so every A-vertex keeps a non-adjacent B-vertex and the
    result is never an orientation of K_{n,m}.
    """
    if m <= 2 * delta:
        raise ValueError("need m > 2 delta")
    arcs = []
    for a in range(n):
        ys = list(range(n, n + m))
        rng.shuffle(ys)
        out_deg = rng.randint(delta, m - delta - 1)
        arcs += [(a, y) for y in ys[:out_deg]]
        arcs += [(y, a) for y in ys[out_deg:m - 1]]
    return Digraph(n + m, frozenset(arcs))


def _b_partition_instance(seg: Segment, rng: random.Random) -> tuple[Digraph, Info]:
    """Instances satisfying the balanced-partition inequality."""
    shapes = seg.param("shapes")
    kind, n, m_lo, m_hi, delta = shapes[rng.randrange(len(shapes))]
    m = rng.randint(m_lo, m_hi)
    if kind == "orientation":
        d = generate("balanced-orientation-knm", seed=rng.getrandbits(63), n=n, m=m)
    else:
        d = _a_dense_bipartite(n, m, delta, rng)
    bp = Bipartition(frozenset(range(n)), frozenset(range(n, n + m)), d)
    if not theorem10_inequality(n, m, bp.delta_A):
        raise RuntimeError(f"engineered instance misses the inequality: {(kind, n, m, bp.delta_A)}")
    return d, {"n": n, "m": m, "kind": kind}


def _b_greedy_instance(seg: Segment, rng: random.Random) -> tuple[Digraph, Info]:
    kind, n, m, delta = seg.param("shape")
    if kind == "orientation":
        d = generate("balanced-orientation-knm", seed=rng.getrandbits(63), n=n, m=m)
    else:
        d = _a_dense_bipartite(n, m, delta, rng)
    return d, {"n": n, "m": m, "kind": kind}


def _b_cross_pair(seg: Segment, rng: random.Random) -> tuple[Digraph, Info]:
    """A = C + X, B = {y1, y2} + rest; y1 -> C -> y2, X -> y1 and y2 -> X.

    The rest of B is joined to A by a balanced orientation, so
    N+(y1) & N-(y2) is exactly C.
    """
    shapes = seg.param("shapes")
    c, extra_max, m_lo, m_hi = shapes[rng.randrange(len(shapes))]
    extra = rng.randint(0, extra_max)
    m = max(rng.randint(m_lo, m_hi), c + extra)
    n = c + extra
    y1, y2 = n, n + 1
    arcs = []
    for a in range(n):
        if a < c:
            arcs += [(y1, a), (a, y2)]
        else:
            arcs += [(a, y1), (y2, a)]
    rest = list(range(n + 2, n + m))
    for a in range(n):
        rng.shuffle(rest)
        half = len(rest) // 2 + (rng.random() < 0.5 and len(rest) % 2)
        arcs += [(a, y) for y in rest[:half]] + [(y, a) for y in rest[half:]]
    d = Digraph(n + m, frozenset(arcs))
    return d, {"c": c, "y1": y1, "y2": y2, "n": n, "m": m}


def _b_orientation(seg: Segment, rng: random.Random) -> tuple[Digraph, Info]:
    n = seg.param("n")
    d = generate("orientation-knm", seed=rng.getrandbits(63), n=n, m=n)
    return d, {"r": seg.param("r"), "n": n}


def _b_problem1(seg: Segment, rng: random.Random) -> tuple[Digraph, Info]:
    """Bipartite, 1..3 components, min out >= 1, min in >= 1, their sum >= 3."""
    max_order = seg.param("max_order", 12)
    densities = seg.param("densities", (0.6, 0.8, 0.95))

    def component(r: random.Random, count: int, heavy: str) -> Digraph | None:
        # one side of the degree sum must reach 2 at every vertex; drawing each
        # component against that side keeps rejection rates per component
        for _ in range(200):
            a, b = r.randint(1 if count == 1 else 2, 3), r.randint(2, 3)
            g = _sample_bipartite(r, a, b, 1, r.random() < 0.3, densities)
            if g is None or not g.is_weakly_connected():
                continue
            ds = g.degree_summary()
            if (ds.delta_plus if heavy == "out" else ds.delta_minus) >= 2:
                return g
        return None

    def make(r: random.Random) -> Digraph | None:
        count = seg.param("components", 0) or r.choice((1, 2, 2, 3, 3, 3))
        heavy = r.choice(("out", "in"))
        parts = []
        for _ in range(count):
            g = component(r, count, heavy)
            if g is None:
                return None
            parts.append(g)
        d = disjoint_union(*parts)
        ds = d.degree_summary()
        if d.n > max_order or ds.delta_plus + ds.delta_minus < 3:
            return None
        return _relabelled(d, r)

    return _retry(rng, make, "problem-1 instance"), {}


def _b_tournament(seg: Segment, rng: random.Random) -> tuple[Digraph, Info]:
    n = rng.randint(seg.param("min_n", 3), seg.param("max_n", 8))
    return generate("tournament", seed=rng.getrandbits(63), n=n), {}


def _b_family(seg: Segment, rng: random.Random) -> tuple[Digraph, Info]:
    params = dict(seg.params)
    family = params.pop("family")
    return generate(family, seed=rng.getrandbits(63), **params), {}


BUILDERS: dict[str, Callable[[Segment, random.Random], tuple[Digraph, Info]]] = {
    "random-digraph": _b_random_digraph,
    "connected-bipartite": _b_connected_bipartite,
    "disconnected-bipartite": _b_disconnected_bipartite,
    "fixed-k22-copies": _b_fixed,
    "simple-bipartite-min2": _b_simple_bipartite_min2,
    "circulant": _b_circulant,
    "partition-instance": _b_partition_instance,
    "greedy-instance": _b_greedy_instance,
    "cross-pair": _b_cross_pair,
    "orientation": _b_orientation,
    "problem-1": _b_problem1,
    "tournament": _b_tournament,
    "family": _b_family,
}


def build_instance(seed: int, seg: Segment, index: int) -> tuple[Digraph | None, Info]:
    if seg.builder == "enumerate":
        return _enumerated(seg.param("n"), index), {}
    if seg.builder == "partition-identity":
        return None, {"n": seg.param("n"), "m": seg.param("m")}
    rng = random.Random(derive_seed(seed, seg.name, index))
    return BUILDERS[seg.builder](seg, rng)


def enumerate_segments(max_n: int) -> tuple[Segment, ...]:
    if max_n > HARD_ENUMERATION_CAP:
        raise ValueError(f"enumeration is capped at n = {HARD_ENUMERATION_CAP}")
    return tuple(Segment(f"enum-n{n}", "enumerate", 4 ** (n * (n - 1) // 2), (("n", n),))
                 for n in range(1, max_n + 1))


def family_segments(family: str, sizes: list[dict], trials: int) -> tuple[Segment, ...]:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    segs = []
    for size in sizes:
        tag = ",".join(f"{k}={v}" for k, v in sorted(size.items()))
        segs.append(Segment(f"{family}[{tag}]", "family", trials,
                            (("family", family),) + tuple(sorted(size.items()))))
    return tuple(segs)


def default_segments(theorem: str) -> tuple[Segment, ...]:
    if theorem not in CHECKS:
        raise ValueError(f"unknown theorem id {theorem!r}")
    return _DEFAULTS[theorem]()


_PARTITION_SHAPES = (
    ("orientation", 1, 2, 8, None),
    ("orientation", 2, 8, 12, None),
    ("orientation", 3, 15, 18, None),
    ("orientation", 4, 24, 24, None),
    ("dense", 2, 10, 12, 4),
    ("dense", 3, 18, 20, 8),
)

_DEFAULTS: dict[str, Callable[[], tuple[Segment, ...]]] = {
    "theorem-2": lambda: enumerate_segments(4),
    "corollary-4": lambda: enumerate_segments(4) + (Segment("random", "random-digraph", 500),),
    "lemma-5": lambda: (Segment("connected", "connected-bipartite", 1000, (("max_order", 9),)),),
    "lemma-6": lambda: (Segment("connected", "connected-bipartite", 1000, (("max_order", 9),)),),
    "theorem-7": lambda: (
        Segment("disconnected", "disconnected-bipartite", 300, (("max_order", 9),)),
        Segment("fixed-2xK22", "fixed-k22-copies", 1, (("copies", 2), ("expect", 2))),
        Segment("fixed-3xK22", "fixed-k22-copies", 1, (("copies", 3), ("expect", 3))),
        Segment("disconnected-wide", "disconnected-bipartite", 100,
                (("components", (2, 2, 3)), ("max_order", 13))),
    ),
    "theorem-8": lambda: (
        Segment("connected-min2", "connected-bipartite", 300,
                (("delta", 2), ("max_order", 10))),
    ),
    "theorem-9": lambda: (
        Segment("simple-min2", "simple-bipartite-min2", 200, (("min_part", 4), ("max_part", 6))),
        Segment("circulant", "circulant", 50, (("min_part", 4), ("max_part", 8))),
    ),
    "theorem-10": lambda: (
        Segment("engineered", "partition-instance", 100, (("shapes", _PARTITION_SHAPES),)),
    ) + tuple(
        Segment(f"identity-n{n}-m{m}", "partition-identity", 1, (("m", m), ("n", n)))
        for m in range(1, 13) for n in range(1, m + 1)
    ),
    "theorem-12": lambda: (
        Segment("orientation-n2", "greedy-instance", 100, (("shape", ("orientation", 2, 8, None)),)),
        Segment("orientation-n3", "greedy-instance", 100, (("shape", ("orientation", 3, 18, None)),)),
        Segment("general-n2", "greedy-instance", 100, (("shape", ("dense", 2, 10, 4)),)),
        Segment("general-n3", "greedy-instance", 100, (("shape", ("dense", 3, 26, 12)),)),
    ),
    "theorem-13": lambda: (
        Segment("engineered", "cross-pair", 50,
                (("shapes", ((1, 1, 4, 8), (2, 1, 10, 12), (3, 2, 17, 19))),)),
    ),
    "theorem-14": lambda: (
        Segment("K16,16", "orientation", 100, (("n", 16), ("r", 2))),
        Segment("K40,40", "orientation", 25, (("n", 40), ("r", 3))),
    ),
    "problem-1": lambda: (Segment("min-degree-sum-3", "problem-1", 200, (("max_order", 15),)),
        Segment("three-sparse", "problem-1", 100,
                (("components", 3), ("densities", (0.35, 0.5, 0.65)), ("max_order", 15))),
    ),
    "problem-2": lambda: (Segment("tournaments", "tournament", 60, (("min_n", 3), ("max_n", 8))),),
    "monotonicity": lambda: enumerate_segments(4) + (
        Segment("random", "random-digraph", 200, (("max_n", 7),)),
        Segment("connected-bipartite", "connected-bipartite", 200, (("max_order", 9),)),
    ),
    "reduction-orders": lambda: enumerate_segments(4) + (
        Segment("random", "random-digraph", 100, (("max_n", 6),)),
    ),
}


# -- per-instance checks -----------------------------------------------------------------


@dataclass
class Outcome:
    data: dict = field(default_factory=dict)
    violation: str | None = None
    coloring: Coloring | None = None
    notable: dict | None = None
    skipped: str | None = None
    tags: list[str] = field(default_factory=list)


def _bp(d: Digraph) -> Bipartition:
    bp = bipartition_of(d)
    if bp is None:
        raise HypothesisError("digraph is not bipartite")
    return bp


def _check_theorem2(d: Digraph, info: Info) -> Outcome:
    dc = exact_dc(d)
    dib = exact_dib(d).value
    out = Outcome({"dc": dc.value, "dib": dib})
    for label, start in (("dc-optimal", dc.witness), ("singletons", Coloring(range(1, d.n + 1)))):
        if d.n == 0:
            break
        final = reduce_to_b_coloring(d, start).final
        if not verify(d, final).is_b_coloring:
            return Outcome(out.data, f"reduction from {label} colouring is not a b-colouring", final)
        if not dc.value <= final.k <= dib:
            return Outcome(out.data, f"reduction from {label} ended with {final.k} colours outside [dc, dib]", final)
    if dc.value > dib:
        out.violation = f"dc = {dc.value} exceeds dib = {dib}"
    out.tags.append(f"dib-dc={dib - dc.value}")
    return out


def _check_corollary4(d: Digraph, info: Info) -> Outcome:
    beta, _ = independence_number(d)
    res = exact_dib(d)
    out = Outcome({"dib": res.value, "beta": beta}, coloring=res.witness)
    if res.value > d.n - beta + 1:
        out.violation = f"dib = {res.value} > n - beta + 1 = {d.n - beta + 1}"
    out.tags.append("tight" if res.value == d.n - beta + 1 else "slack")
    return out


def _check_lemma5(d: Digraph, info: Info) -> Outcome:
    bp = _bp(d)
    res = exact_dib(d)
    small = min(bp.n, bp.m)
    out = Outcome({"dib": res.value, "small_side": small}, coloring=res.witness)
    if res.value > small + 1:
        out.violation = f"dib = {res.value} > smaller side + 1 = {small + 1}"
    out.tags.append(f"dib={res.value}")
    return out


def _check_lemma6(d: Digraph, info: Info) -> Outcome:
    """Colour spread of one b-colouring for every feasible k >= 3."""
    bp = _bp(d)
    out = Outcome()
    checked = []
    for k in range(3, d.n + 1):
        c = b_coloring_exists(d, k)
        if c is None:
            continue
        spread = class_color_spread(d, bp, c)
        checked.append([k, *spread])
        if not (max(spread) == k and min(spread) >= k - 1):
            return Outcome({"spreads": checked}, f"{k}-colour b-colouring has side colour counts {spread}", c)
    out.data = {"spreads": checked}
    out.tags.append("vacuous" if not checked else "checked")
    return out


def _check_theorem7(d: Digraph, info: Info) -> Outcome:
    pred = theorem7_predicate(d)
    witness = dib_exceeds(d, 2)
    big = witness is not None
    out = Outcome({"predicate": pred, "dib_gt_2": big}, coloring=witness)
    out.tags.append(f"predicate={pred}")
    if pred != big:
        out.violation = f"predicate {pred} but dib > 2 is {big}"
        return out
    expect = info.get("expect")
    if expect is not None:
        dib = exact_dib(d).value
        out.data["dib"] = dib
        if (expect == 2 and dib != 2) or (expect >= 3 and dib < 3):
            out.violation = f"fixed instance has dib = {dib}, expected {'2' if expect == 2 else '>= 3'}"
            return out
    if pred:
        res = theorem7_construct(d)
        out.coloring = res.coloring
        out.tags.append(f"method={res.method}")
        if res.k < 3:
            out.violation = f"construction used only {res.k} colours"
    return out


def _check_theorem8(d: Digraph, info: Info) -> Outcome:
    union, inter = theorem8_predicates(d)
    witness = dib_exceeds(d, 2)
    big = witness is not None
    out = Outcome({"union": union, "intersection": inter, "dib_gt_2": big}, coloring=witness)
    out.tags.append(f"union={union},intersection={inter},dib>2={big}")
    if big and not union:
        out.violation = "dib > 2 but the union covering condition fails"
    elif inter and not big:
        out.violation = "intersection covering condition holds but dib <= 2"
    elif inter:
        try:
            res = theorem8_construct(d)
        except ConstructionError as e:
            out.violation = f"construction failed: {e}"
            return out
        out.coloring = res.coloring
        out.data["construct_k"] = res.k
        if res.notes:
            out.tags.append("construct-invariant-note")
    return out


def _check_theorem9(d: Digraph, info: Info) -> Outcome:
    bp = _bp(d)
    res = theorem9_construct(d, bp)
    out = Outcome({"method": res.method, "bad_path_order": max_bad_path(d, bp).order},
                  coloring=res.coloring)
    out.tags.append(f"method={res.method.split(':')[0]}")
    if res.k != 3 or not res.report.is_b_coloring:
        out.violation = f"construction returned a {res.k}-colouring (b-colouring: {res.report.is_b_coloring})"
        return out
    if out.data["bad_path_order"] < 4:
        out.violation = f"longest bad path has order {out.data['bad_path_order']} < 4"
        return out
    ds = d.degree_summary()
    if set(ds.out_degrees) == {2} and set(ds.in_degrees) == {2}:
        dib = exact_dib(d).value
        out.data["dib"] = dib
        out.tags.append("two-regular")
        if dib != 3:
            out.violation = f"2-regular instance has dib = {dib}, expected 3"
    elif dib_exceeds(d, 2) is None:
        out.violation = "exact search finds no b-colouring with more than 2 colours"
    return out


def _check_partition_identity(n: int, m: int) -> Outcome:
    q, re = divmod(m, n)
    counts = Counter()
    total = 0
    for parts in balanced_partitions(range(m), n):
        total += 1
        counts[sum(1 for p in parts if len(p) == q)] += 1
    closed = balanced_partition_count(m, n)
    out = Outcome({"count": total})
    if total != closed:
        out.violation = f"enumerated {total} partitions, closed form says {closed}"
    elif set(counts) != {n - re}:
        out.violation = f"floor-sized part counts {sorted(counts)} differ from n - re = {n - re}"
    else:
        sub = lambda size: math.comb(m, size) * balanced_partition_count(m - size, n - 1)
        if re:
            lhs_ok = sub(q + 1) == re * total and sub(q) == (n - re) * total
            two_term = n * total == sub(q) + sub(q + 1)
            if not (lhs_ok and two_term):
                out.violation = "marked-part identity fails"
        elif sub(q) != n * total:
            out.violation = "marked-part identity fails (equal part sizes)"
    return out


def _check_theorem10(d: Digraph, info: Info) -> Outcome:
    n, m = info["n"], info["m"]
    bp = Bipartition(frozenset(range(n)), frozenset(range(n, n + m)), d)
    res = partition_coloring(d, bp)
    b_vertices = {v for cr in res.report.classes for v in cr.b_vertices}
    out = Outcome({"method": res.method}, coloring=res.coloring)
    out.tags.append(f"{info['kind']}-n{n}:{res.method}")
    if not res.report.is_b_coloring or res.k != n:
        out.violation = f"output is a {res.k}-colouring, b-colouring: {res.report.is_b_coloring}"
    elif not bp.A <= b_vertices:
        out.violation = "some A-vertex is not a b-vertex"
    return out


def _check_theorem12(d: Digraph, info: Info) -> Outcome:
    n, m = info["n"], info["m"]
    bp = Bipartition(frozenset(range(n)), frozenset(range(n, n + m)), d)
    res = greedy_coloring(d, bp)
    out = Outcome({"method": res.method, "stages": [list(s) for s in res.witness]}, coloring=res.coloring)
    out.tags.append(res.method)
    if not res.report.is_b_coloring or res.k != n:
        out.violation = f"output is a {res.k}-colouring, b-colouring: {res.report.is_b_coloring}"
    elif any(coloured > budget for _, coloured, budget in res.witness):
        out.violation = f"stage budget exceeded: {res.witness}"
    return out


def _check_theorem13(d: Digraph, info: Info) -> Outcome:
    c, y1, y2 = info["c"], info["y1"], info["y2"]
    bp = _bp(d)
    if bp.n > bp.m:
        bp = bp.swapped()
    if not theorem13_inequality(c, bp.m, bp.delta_A):
        raise RuntimeError(f"engineered instance misses the inequality (c={c}, m={bp.m}, delta_A={bp.delta_A})")
    res = cross_pair_coloring(d, bp, y1, y2)
    out = Outcome({"c": c, "method": res.method}, coloring=res.coloring)
    out.tags.append(f"c={c}")
    if not res.report.is_b_coloring or res.k != c + 1:
        out.violation = f"output is a {res.k}-colouring, b-colouring: {res.report.is_b_coloring}"
        return out
    if d.n <= 10:
        out.tags.append("exact-cross-checked")
        if dib_exceeds(d, c) is None:
            out.violation = f"exact search finds no b-colouring with more than {c} colours"
    return out


def _check_theorem14(d: Digraph, info: Info) -> Outcome:
    r, n = info["r"], info["n"]
    if n < theorem14_threshold(r):
        raise HypothesisError(f"side size {n} below threshold {theorem14_threshold(r):.3f}")
    bp = Bipartition(frozenset(range(n)), frozenset(range(n, 2 * n)), d)
    bic = find_one_directional_biclique(d, bp, r)
    if bic is None:
        return Outcome({"found": False}, "no one-directional biclique found")
    res = biclique_coloring(d, bp, bic)
    out = Outcome({"found": True, "forward": bic.forward}, coloring=res.coloring)
    out.tags.append(f"r={r}")
    if res.k != r or not res.report.is_b_coloring:
        out.violation = f"output is a {res.k}-colouring, b-colouring: {res.report.is_b_coloring}"
    return out


def _check_problem1(d: Digraph, info: Info) -> Outcome:
    big = dib_exceeds(d, 2)
    comps = len(d.weak_components())
    out = Outcome({"dib_gt_2": big is not None, "components": comps})
    out.tags.append(f"components={comps},dib={'>=3' if big is not None else '2'}")
    if big is None:
        out.notable = {"kind": "dib-2", "components": comps, "dgf": format_dgf(d)}
    return out


def _check_problem2(d: Digraph, info: Info) -> Outcome:
    res = exact_dib(d)
    dc = exact_dc(d).value
    ratio = res.value / (d.n / math.log2(d.n))
    out = Outcome({"n": d.n, "dib": res.value, "dc": dc, "ratio": round(ratio, 6)}, coloring=res.witness)
    out.tags.append(f"n={d.n},dib={res.value}")
    return out


def _check_monotonicity(d: Digraph, info: Info) -> Outcome:
    ks = feasible_ks(d)
    out = Outcome({"feasible": ks})
    gaps = [k for k in range(min(ks, default=1), max(ks, default=0) + 1) if k not in ks]
    if gaps:
        out.notable = {"kind": "non-monotone", "feasible": ks, "dgf": format_dgf(d)}
        out.tags.append("gap")
    else:
        out.tags.append("interval")
    return out


def _all_reduction_finals(d: Digraph, c: Coloring, seen: dict) -> set[int]:
    if c in seen:
        return seen[c]
    bad = [cr.color for cr in verify(d, c).classes if not cr.good]
    if not bad:
        finals = {c.k}
    else:
        finals = set()
        for t in bad:
            try:
                nxt, _ = reduce_once(d, c, t)
            except NotReducible:
                continue
            finals |= _all_reduction_finals(d, nxt, seen)
    seen[c] = finals
    return finals


def _check_reduction_orders(d: Digraph, info: Info) -> Outcome:
    if d.n == 0:
        return Outcome(skipped="empty digraph")
    start = Coloring(range(1, d.n + 1))
    finals = sorted(_all_reduction_finals(d, start, {}))
    dc = exact_dc(d).value
    dib = exact_dib(d).value
    out = Outcome({"finals": finals, "dc": dc, "dib": dib})
    out.tags.append(f"spread={finals[-1] - finals[0]}")
    if finals[0] < dc or finals[-1] > dib:
        out.violation = f"elimination orders reach {finals} outside [dc, dib] = [{dc}, {dib}]"
    if len(finals) > 1:
        out.notable = {"kind": "order-dependent", "finals": finals, "dgf": format_dgf(d)}
    return out


CHECKS: dict[str, Callable[[Digraph, Info], Outcome]] = {
    "theorem-2": _check_theorem2,
    "corollary-4": _check_corollary4,
    "lemma-5": _check_lemma5,
    "lemma-6": _check_lemma6,
    "theorem-7": _check_theorem7,
    "theorem-8": _check_theorem8,
    "theorem-9": _check_theorem9,
    "theorem-10": _check_theorem10,
    "theorem-12": _check_theorem12,
    "theorem-13": _check_theorem13,
    "theorem-14": _check_theorem14,
    "problem-1": _check_problem1,
    "problem-2": _check_problem2,
    "monotonicity": _check_monotonicity,
    "reduction-orders": _check_reduction_orders,
}
EXPLORE_CHECKS = frozenset({"problem-1", "problem-2", "monotonicity", "reduction-orders"})
ASSERT_CHECKS = frozenset(CHECKS) - EXPLORE_CHECKS


# -- evaluation -----------------------------------------------------------------------


def _evaluate(task: tuple[str, int, Segment, int]) -> dict:
    theorem, seed, seg, index = task
    # corpus sizes are chosen deliberately; the solvers' desk-scale advisory is noise here
    logging.getLogger("dibchrom.exact").setLevel(logging.ERROR)
    key = f"{seg.name}/{index:06d}"
    d = None
    try:
        d, info = build_instance(seed, seg, index)
    except ValueError as e:
        # a generator that cannot meet its parameters is a corpus gap, not a finding
        return {"key": key, "data": {}, "tags": ["build-error"], "skipped": f"could not build instance: {e}"}
    try:
        if d is None:
            out = _check_partition_identity(info["n"], info["m"])
        else:
            out = CHECKS[theorem](d, info)
    except HypothesisError as e:
        out = Outcome(skipped=str(e))
    except Exception as e:  # noqa: BLE001 - any failure is a finding
        out = Outcome(violation=f"{type(e).__name__}: {e}")
    result = {"key": key, "data": out.data, "tags": out.tags}
    if out.skipped is not None:
        result["skipped"] = out.skipped
    if out.violation is not None:
        result["violation"] = out.violation
        if d is not None:
            result["dgf"] = format_dgf(d, [f"{theorem} {key}: {out.violation}"])
        if out.coloring is not None:
            result["coloring"] = format_coloring(out.coloring)
    if out.notable is not None:
        result["notable"] = {"key": key, **out.notable}
    return result


def resolve_workers(workers: int | None = None) -> int:
    if workers is None:
        env = os.environ.get("DIB_WORKERS")
        workers = int(env) if env else (os.cpu_count() or 1)
    return max(1, workers)


def _safe_name(key: str) -> str:
    return "".join(ch if ch.isalnum() or ch in "-_" else "_" for ch in key)


def run_check(spec: CheckSpec, workers: int | None = None,
              artifact_dir: str | Path | None = "check-artifacts") -> CheckReport:
    """Evaluate ``spec`` over its corpus and aggregate the results.

    Violations (if any) are written as ``<theorem>-<key>.dgf`` (plus a
    ``.col`` colouring when one exists) into ``artifact_dir``; pass ``None``
    to skip persisting.
    """
    mode = spec.resolved_mode()
    segments = spec.resolved_segments()
    t0 = time.perf_counter()
    tasks = [(spec.theorem, spec.seed, seg, i) for seg in segments for i in range(seg.count)]
    workers = resolve_workers(workers)
    if workers == 1 or len(tasks) < 2:
        results = [_evaluate(t) for t in tasks]
    else:
        chunk = max(1, len(tasks) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evaluate, tasks, chunksize=chunk))
    results.sort(key=lambda r: r["key"])

    violations, notable = [], []
    summary: Counter[str] = Counter()
    skipped = 0
    for r in results:
        summary.update(r["tags"])
        if "skipped" in r:
            skipped += 1
            summary["skipped"] += 1
        if "violation" in r:
            violations.append({"key": r["key"], "detail": r["violation"], "data": r["data"]})
        if "notable" in r:
            notable.append(r["notable"])

    if violations and artifact_dir is not None:
        root = Path(artifact_dir)
        root.mkdir(parents=True, exist_ok=True)
        for r in results:
            if "violation" not in r:
                continue
            stem = f"{spec.theorem}-{_safe_name(r['key'])}"
            if "dgf" in r:
                (root / f"{stem}.dgf").write_text(r["dgf"], encoding="utf-8")
            if "coloring" in r:
                (root / f"{stem}.col").write_text(r["coloring"], encoding="utf-8")
        log.error("%d violations of %s persisted to %s", len(violations), spec.theorem, root)

    return CheckReport(
        theorem=spec.theorem,
        mode=mode,
        seed=spec.seed,
        corpus=[s.to_dict() for s in segments],
        instances=len(results) - skipped,
        skipped=skipped,
        violations=violations,
        notable=notable,
        summary=dict(sorted(summary.items())),
        wall_time=time.perf_counter() - t0,
    )
