from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

import oracle
from conftest import bipartite_digraphs, c3, digraphs, tt3
from dibchrom.coloring import verify
from dibchrom.digraph import bipartition_of, build, disjoint_union, generate, independence_number
from dibchrom.exact import (
    HypothesisError,
    SearchLimitExceeded,
    b_coloring_exists,
    bounds,
    degree_bound,
    dib_exceeds,
    exact_dc,
    exact_dib,
    feasible_ks,
    is_complete_symmetric_bipartite,
    theorem7_predicate,
    theorem8_predicates,
)
from dibchrom.kernels import BACKEND

BACKENDS = ["python"] + (["cython"] if BACKEND == "cython" else [])


@pytest.mark.parametrize("backend", BACKENDS)
class TestExamples:
    def test_triangle(self, backend):
        assert exact_dc(c3(), backend=backend).value == 2
        assert exact_dib(c3(), backend=backend).value == 2

    def test_transitive(self, backend):
        assert exact_dc(generate("transitive-tournament", n=6), backend=backend).value == 1
        assert exact_dib(tt3(), backend=backend).value == 2

    @pytest.mark.parametrize("n,m", [(1, 1), (2, 2), (2, 3), (3, 3)])
    def test_complete_symmetric(self, backend, n, m):
        d = generate("complete-symmetric-bipartite", n=n, m=m)
        assert exact_dc(d, backend=backend).value == 2
        assert exact_dib(d, backend=backend).value == 2

    def test_circulant(self, backend):
        assert exact_dib(generate("circulant-2-regular-bipartite", seed=None, part=4),
                         backend=backend).value == 3


def test_witnesses_verify():
    d = generate("random", seed=5, n=7, p=0.4)
    res = exact_dib(d)
    assert verify(d, res.witness).is_b_coloring and res.witness.k == res.value
    dc = exact_dc(d)
    assert verify(d, dc.witness).is_acyclic and dc.witness.k == dc.value


def test_node_limit():
    d = generate("random", seed=1, n=9, p=0.5)
    with pytest.raises(SearchLimitExceeded):
        exact_dib(d, node_limit=1)


def test_solve_result_excludes_time_by_default():
    out = exact_dib(c3()).to_dict()
    assert set(out) == {"value", "witness", "nodes_expanded"}
    assert "elapsed" in exact_dib(c3()).to_dict(timing=True)


@given(digraphs(max_n=6))
def test_against_brute_force(d):
    assert exact_dc(d).value == oracle.brute_dc(d)
    if d.n:
        assert exact_dib(d).value == oracle.brute_dib(d)
        assert set(feasible_ks(d)) == oracle.brute_feasible(d)


@given(digraphs(min_n=1, max_n=7))
def test_bounds_sandwich(d):
    dib = exact_dib(d).value
    rep = bounds(d)
    assert rep.consistent()
    assert rep.best_lower <= dib <= rep.best_upper
    beta, _ = independence_number(d)
    assert dib <= d.n - beta + 1
    assert exact_dc(d).value <= dib


@given(bipartite_digraphs(max_side=4))
def test_connected_bipartite_bound(d):
    if d.is_weakly_connected():
        bp = bipartition_of(d)
        assert exact_dib(d).value <= min(bp.n, bp.m) + 1


@given(digraphs(min_n=1, max_n=6), st.integers(0, 4))
def test_dib_exceeds(d, t):
    c = dib_exceeds(d, t)
    feasible = oracle.brute_feasible(d)
    assert (c is not None) == any(k > t for k in feasible)
    if c is not None:
        assert c.k > t and verify(d, c).is_b_coloring


def test_degree_bound_is_upper_bound():
    d = generate("tournament", seed=2, n=7)
    assert b_coloring_exists(d, degree_bound(d) + 1) is None


def test_bounds_keys():
    d = generate("complete-symmetric-bipartite", n=2, m=3)
    rep = bounds(d)
    assert rep.upper["bipartite-smaller-side"] == 3
    assert rep.lower["bipartite-min-degree-2"] == 2
    assert rep.best_upper >= 2


class TestTheorem7Predicate:
    k22 = generate("complete-symmetric-bipartite", n=2, m=2)

    def test_three_copies(self):
        assert theorem7_predicate(disjoint_union(self.k22, self.k22, self.k22))

    def test_two_copies(self):
        assert not theorem7_predicate(disjoint_union(self.k22, self.k22))

    def test_non_complete_component(self):
        k33 = generate("complete-symmetric-bipartite", n=3, m=3)
        minus = build(6, sorted(k33.arcs - {(0, 3)}))
        assert minus.min_degree() >= 2 and not is_complete_symmetric_bipartite(minus)
        assert theorem7_predicate(disjoint_union(self.k22, minus))

    def test_hypotheses(self):
        with pytest.raises(HypothesisError):
            theorem7_predicate(self.k22)
        with pytest.raises(HypothesisError):
            theorem7_predicate(disjoint_union(c3(), c3()))
        with pytest.raises(HypothesisError):
            theorem7_predicate(disjoint_union(build(2, [(0, 1)]), build(2, [(0, 1)])))


class TestTheorem8Predicates:
    def test_complete(self):
        assert theorem8_predicates(generate("complete-symmetric-bipartite", n=2, m=3)) == (False, False)

    def test_removing_digon_frees_pair(self):
        k33 = generate("complete-symmetric-bipartite", n=3, m=3)
        d = build(6, sorted(k33.arcs - {(0, 3), (3, 0)}))
        union, inter = theorem8_predicates(d)
        assert not union and not inter
        d2 = build(6, sorted(k33.arcs - {(0, 3)}))
        assert theorem8_predicates(d2) == (False, False)

    def test_rejects_disconnected(self):
        k22 = generate("complete-symmetric-bipartite", n=2, m=2)
        with pytest.raises(HypothesisError):
            theorem8_predicates(disjoint_union(k22, k22))
