from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

import oracle
from conftest import bipartite_digraphs, c3, digraphs
from dibchrom.coloring import (
    Coloring,
    b_minus_vertices,
    b_plus_vertices,
    class_color_spread,
    is_acyclic_coloring,
    verify,
)
from dibchrom.digraph import Bipartition, bipartition_of, generate


class TestColoring:
    def test_surjective(self):
        with pytest.raises(ValueError, match="not surjective"):
            Coloring([1, 3])

    def test_positive(self):
        with pytest.raises(ValueError):
            Coloring([0, 1])

    def test_from_classes(self):
        c = Coloring.from_classes(3, [[0], [1, 2]])
        assert c.colors == (1, 2, 2) and c.k == 2
        assert c.color_class(2) == {1, 2}
        with pytest.raises(ValueError):
            Coloring.from_classes(3, [[0], [1]])

    def test_canonical(self):
        assert Coloring([2, 1, 2, 3]).canonical() == Coloring([1, 2, 1, 3])

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            verify(c3(), Coloring([1, 2]))


class TestTriangle:
    split = Coloring([1, 2, 2])

    def test_acyclicity(self):
        assert not is_acyclic_coloring(c3(), Coloring([1, 1, 1]))
        assert is_acyclic_coloring(c3(), self.split)
        assert is_acyclic_coloring(c3(), Coloring([1, 2, 3]))

    def test_b_vertices(self):
        d = c3()
        assert b_plus_vertices(d, self.split, 2) == [2]
        assert b_plus_vertices(d, self.split, 1) == [0]
        assert b_minus_vertices(d, self.split, 2) == [1]
        assert b_minus_vertices(d, self.split, 1) == [0]

    def test_one_colour_is_vacuous(self):
        d = generate("transitive-tournament", n=3)
        one = Coloring([1, 1, 1])
        assert b_plus_vertices(d, one, 1) == [0, 1, 2]
        assert verify(d, one).is_b_coloring

    def test_verify_split(self):
        rep = verify(c3(), self.split)
        assert rep.is_b_coloring
        assert rep.classes[1].witness_pair == (2, 1)
        assert rep.classes[1].b_vertices == ()

    def test_singletons(self):
        rep = verify(c3(), Coloring([1, 2, 3]))
        assert rep.is_acyclic and not rep.is_b_coloring
        assert rep.failure_reason() == "class 1 lacks b⁺-vertex"
        assert rep.describe() == "acyclic: yes, b-coloring: NO (class 1 lacks b⁺-vertex)"

    def test_cyclic_reason(self):
        assert "directed cycle" in verify(c3(), Coloring([1, 1, 1])).failure_reason()


@given(digraphs(max_n=6), st.data())
def test_verify_matches_definition(d, data):
    raw = [data.draw(st.integers(1, max(d.n, 1))) for _ in range(d.n)]
    rank = {c: i for i, c in enumerate(sorted(set(raw)), start=1)}
    c = Coloring([rank[x] for x in raw])
    rep = verify(d, c)
    assert rep.is_acyclic == oracle.acyclic(d, list(c.colors))
    assert rep.is_b_coloring == oracle.is_b_coloring(d, list(c.colors))


class TestSpread:
    def test_examples(self):
        d = generate("one-directional-knm", n=2, m=2)
        bp = bipartition_of(d)
        assert class_color_spread(d, bp, Coloring([1, 2, 1, 2])) == (2, 2)
        assert class_color_spread(d, bp, Coloring([1, 1, 2, 2])) == (1, 1)

    @given(bipartite_digraphs(max_side=3))
    def test_every_b_coloring_with_three_or_more_colours(self, d):
        bp = bipartition_of(d)
        for p in oracle.set_partitions(d.n):
            if max(p) >= 3 and oracle.is_b_coloring(d, p):
                a, b = class_color_spread(d, bp, Coloring(p))
                k = max(p)
                assert max(a, b) == k and min(a, b) >= k - 1
