from __future__ import annotations

import itertools
import math
import random

import pytest
from hypothesis import given, strategies as st

from conftest import bipartite_digraphs
from dibchrom.coloring import class_color_spread, verify
from dibchrom.constructions import (
    BadPath,
    Biclique,
    ConstructionError,
    PartitionNotFound,
    bad_paths,
    balanced_partition_count,
    balanced_partitions,
    biclique_coloring,
    corollary11_threshold,
    cross_pair_coloring,
    cross_pair_value,
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
from dibchrom.digraph import Bipartition, Digraph, bipartition_of, build, disjoint_union, generate
from dibchrom.exact import HypothesisError, dib_exceeds, exact_dib, theorem7_predicate, theorem8_predicates

K22 = generate("complete-symmetric-bipartite", n=2, m=2)


def sides(d: Digraph, n: int) -> Bipartition:
    return Bipartition(frozenset(range(n)), frozenset(range(n, d.n)), d)


def dense(n: int, m: int, delta: int, seed: int) -> Digraph:
    """Simple bipartite, every A-vertex with delta out- and delta in-arcs, never complete."""
    rng = random.Random(seed)
    arcs = []
    for a in range(n):
        ys = rng.sample(range(n, n + m), 2 * delta)
        arcs += [(a, y) for y in ys[:delta]] + [(y, a) for y in ys[delta:]]
    return Digraph(n + m, frozenset(arcs))


class TestTheorem7:
    def test_three_components(self):
        d = disjoint_union(K22, K22, K22)
        res = theorem7_construct(d)
        assert res.k >= 3 and verify(d, res.coloring).is_b_coloring

    def test_two_components_one_incomplete(self):
        k33 = generate("complete-symmetric-bipartite", n=3, m=3)
        d = disjoint_union(build(6, sorted(k33.arcs - {(0, 3)})), K22)
        res = theorem7_construct(d)
        assert res.k >= 3 and verify(d, res.coloring).is_b_coloring
        assert res.k <= exact_dib(d).value

    def test_rejects_two_complete(self):
        with pytest.raises(HypothesisError):
            theorem7_construct(disjoint_union(K22, K22))

    @given(st.integers(0, 10**6), st.sampled_from([(2, 2), (2, 3), (3, 3)]),
           st.sampled_from([(2, 2), (2, 3), (3, 3)]), st.booleans())
    def test_random_two_or_three_components(self, seed, s1, s2, third):
        parts = [generate("random-bipartite", seed=seed + i, n=a, m=b, delta=2, simple=False, p=0.7)
                 for i, (a, b) in enumerate([s1, s2] + ([s1] if third else []))]
        if not all(p.is_weakly_connected() for p in parts):
            return
        d = disjoint_union(*parts)
        if theorem7_predicate(d):
            res = theorem7_construct(d)
            assert res.k >= 3 and verify(d, res.coloring).is_b_coloring


class TestTheorem8:
    def test_matching_removed_from_k44(self):
        k44 = generate("complete-symmetric-bipartite", n=4, m=4)
        d = build(8, sorted(k44.arcs - {(i, 4 + i) for i in range(4)} - {(4 + i, i) for i in range(4)}))
        assert theorem8_predicates(d) == (True, True)
        res = theorem8_construct(d)
        assert res.k >= 3 and verify(d, res.coloring).is_b_coloring
        assert res.k <= exact_dib(d).value

    def test_rejects_complete(self):
        with pytest.raises(HypothesisError):
            theorem8_construct(generate("complete-symmetric-bipartite", n=3, m=3))

    @given(st.integers(0, 10**6), st.integers(4, 5), st.integers(4, 5))
    def test_random(self, seed, a, b):
        d = generate("random-bipartite", seed=seed, n=a, m=b, delta=2, simple=True)
        if not d.is_weakly_connected():
            return
        union, inter = theorem8_predicates(d)
        if inter:
            res = theorem8_construct(d)
            assert 3 <= res.k <= exact_dib(d).value


class TestBadPaths:
    def test_examples(self):
        assert max_bad_path(generate("one-directional-knm", n=2, m=2)).order == 4
        assert max_bad_path(build(3, [(0, 1), (1, 2)])).order == 2
        assert max_bad_path(Digraph(3, frozenset())).order == 1

    def test_rejects_digon(self):
        with pytest.raises(HypothesisError):
            max_bad_path(K22)

    @given(bipartite_digraphs(max_side=3, simple=True))
    def test_paths_are_valid_and_longest(self, d):
        longest = max_bad_path(d)
        assert longest.is_valid(d)
        orders = [o for o in range(1, d.n + 1) if next(bad_paths(d, o), None) is not None]
        assert longest.order == max(orders)
        for p in bad_paths(d, min(3, d.n)):
            assert p.is_valid(d)

    def test_invalid_path(self):
        assert not BadPath((0, 1, 2), True).is_valid(build(3, [(0, 1), (1, 2)]))


class TestTheorem9:
    def test_circulant(self):
        d = generate("circulant-2-regular-bipartite", seed=None, part=4)
        res = theorem9_construct(d)
        assert res.k == 3 and verify(d, res.coloring).is_b_coloring

    def test_rejects_digon(self):
        with pytest.raises(HypothesisError):
            theorem9_construct(K22)

    @given(st.integers(0, 10**6), st.integers(4, 5), st.integers(4, 6))
    def test_random(self, seed, a, b):
        d = generate("random-bipartite", seed=seed, n=a, m=b, delta=2, simple=True)
        res = theorem9_construct(d)
        assert res.k == 3 and verify(d, res.coloring).is_b_coloring
        assert dib_exceeds(d, 2) is not None


class TestBalancedPartitions:
    @pytest.mark.parametrize("m,n", [(m, n) for m in range(0, 9) for n in range(1, m + 1)])
    def test_count_and_shape(self, m, n):
        parts = list(balanced_partitions(range(m), n))
        assert len(parts) == balanced_partition_count(m, n)
        canon = {frozenset(frozenset(p) for p in ps) for ps in parts}
        assert len(canon) == len(parts)
        for ps in parts:
            assert sorted(itertools.chain.from_iterable(ps)) == list(range(m))
            assert {len(p) for p in ps} <= {m // n, math.ceil(m / n)}

    def test_inequality_examples(self):
        assert theorem10_inequality(2, 8, 4)
        assert not theorem10_inequality(2, 8, 3)
        assert theorem10_inequality(1, 1, 1)

    def test_partition_colouring_k28(self):
        d = generate("balanced-orientation-knm", seed=0, n=2, m=8)
        res = partition_coloring(d, sides(d, 2), seed=3)
        assert res.k == 2 and verify(d, res.coloring).is_b_coloring
        b_vertices = {v for cr in res.report.classes for v in cr.b_vertices}
        assert {0, 1} <= b_vertices

    def test_single_vertex_side(self):
        d = build(3, [(0, 1), (2, 0)])
        assert partition_coloring(d, sides(d, 1)).k == 1
        with pytest.raises(PartitionNotFound):
            partition_coloring(build(3, [(0, 1), (0, 2)]), sides(build(3, [(0, 1), (0, 2)]), 1))

    def test_miss_below_inequality_is_a_signal(self):
        d = generate("one-directional-knm", n=2, m=4)
        assert not theorem10_inequality(2, 4, 0)
        with pytest.raises(PartitionNotFound):
            partition_coloring(d, sides(d, 2), attempts=5)

    def test_deterministic(self):
        d = generate("balanced-orientation-knm", seed=9, n=3, m=16)
        assert partition_coloring(d, sides(d, 3), seed=1).coloring == partition_coloring(d, sides(d, 3), seed=1).coloring

    @given(st.integers(1, 4), st.integers(1, 40), st.integers(0, 40))
    def test_threshold_implies_inequality(self, n, extra, delta):
        m = n + extra
        if corollary11_threshold(n, m, min(delta, m)):
            assert theorem10_inequality(n, m, min(delta, m))

    def test_threshold_examples(self):
        assert corollary11_threshold(2, 24, 4)
        assert not corollary11_threshold(2, 24, 0)
        with pytest.raises(ValueError):
            corollary11_threshold(3, 2, 1)


class TestGreedy:
    def test_orientation_k3_20(self):
        d = generate("balanced-orientation-knm", seed=1, n=3, m=20)
        res = greedy_coloring(d, sides(d, 3))
        assert res.k == 3 and res.method == "greedy-orientation"
        assert all(c <= b for _, c, b in res.witness)

    def test_general(self):
        d = dense(2, 9, 4, seed=5)
        res = greedy_coloring(d, sides(d, 2))
        assert res.k == 2 and res.method == "greedy-general"
        assert verify(d, res.coloring).is_b_coloring

    def test_single(self):
        d = build(3, [(0, 1), (2, 0)])
        assert greedy_coloring(d, sides(d, 1)).k == 1

    def test_degree_too_small(self):
        d = dense(3, 20, 5, seed=0)
        with pytest.raises(HypothesisError):
            greedy_coloring(d, sides(d, 3))

    @given(st.integers(0, 10**6), st.sampled_from([(2, 10, 4), (3, 26, 12), (3, 30, 13)]))
    def test_budgets(self, seed, shape):
        n, m, delta = shape
        d = dense(n, m, delta, seed)
        res = greedy_coloring(d, sides(d, n))
        assert res.k == n and all(c <= b for _, c, b in res.witness)


def engineered_cross_pair(c: int, m: int, seed: int) -> tuple[Digraph, int, int]:
    """A = C, y1 -> C -> y2, rest of B balanced against A."""
    rng = random.Random(seed)
    y1, y2 = c, c + 1
    arcs = [(y1, a) for a in range(c)] + [(a, y2) for a in range(c)]
    rest = list(range(c + 2, c + m))
    for a in range(c):
        rng.shuffle(rest)
        half = len(rest) // 2
        arcs += [(a, y) for y in rest[:half]] + [(y, a) for y in rest[half:]]
    return Digraph(c + m, frozenset(arcs)), y1, y2


class TestCrossPair:
    @pytest.mark.parametrize("c,m", [(1, 4), (1, 6), (2, 10), (3, 17)])
    def test_engineered(self, c, m):
        d, y1, y2 = engineered_cross_pair(c, m, seed=c * m)
        assert cross_pair_value(d, y1, y2) == c
        bp = sides(d, c)
        assert theorem13_inequality(c, m, bp.delta_A)
        res = cross_pair_coloring(d, bp, y1, y2)
        assert res.k == c + 1 and verify(d, res.coloring).is_b_coloring
        if d.n <= 10:
            assert exact_dib(d).value >= c + 1

    def test_degenerate(self):
        assert not theorem13_inequality(0, 10, 5)
        d, y1, y2 = engineered_cross_pair(1, 6, seed=0)
        with pytest.raises(HypothesisError):
            cross_pair_coloring(d, sides(d, 1), y2, y1)


class TestBiclique:
    def test_thresholds(self):
        assert theorem14_threshold(2) == 15.5
        assert theorem14_threshold(3) == pytest.approx(39.171875)

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_one_directional(self, r):
        d = generate("one-directional-knm", n=3, m=4)
        bic = find_one_directional_biclique(d, sides(d, 3), r)
        assert bic is not None and bic.forward and bic.is_valid(d)

    def test_random_k16(self):
        for seed in range(5):
            d = generate("orientation-knm", seed=seed, n=16, m=16)
            bic = find_one_directional_biclique(d, sides(d, 16), 2)
            res = biclique_coloring(d, sides(d, 16), bic)
            assert res.k == 2 and verify(d, res.coloring).is_b_coloring

    def test_none_below_threshold(self):
        d = build(4, [(0, 2), (3, 0), (1, 3), (2, 1)])
        assert find_one_directional_biclique(d, sides(d, 2), 2) is None

    def test_rejects_non_orientation(self):
        with pytest.raises(HypothesisError):
            find_one_directional_biclique(K22, sides(K22, 2), 1)

    def test_colouring_spread(self):
        d = generate("orientation-knm", seed=2, n=6, m=6)
        d = build(12, sorted({(u, v) for u, v in d.arcs if not {u, v} <= {0, 1, 6, 7}}
                             | {(0, 6), (0, 7), (1, 6), (1, 7)}))
        bp = sides(d, 6)
        res = biclique_coloring(d, bp, Biclique((0, 1), (6, 7)))
        assert res.k == 2 and class_color_spread(d, bp, res.coloring) == (2, 2)

    def test_bad_biclique(self):
        d = generate("orientation-knm", seed=2, n=3, m=3)
        with pytest.raises(HypothesisError):
            biclique_coloring(d, sides(d, 3), Biclique((0,), (0,)))
