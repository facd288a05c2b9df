from __future__ import annotations

import itertools
import os

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from dibchrom.digraph import Digraph

settings.register_profile("default", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=1500, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def digraphs(draw, min_n: int = 0, max_n: int = 6) -> Digraph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Digraph(n, frozenset(chosen))


@st.composite
def bipartite_digraphs(draw, max_side: int = 4, simple: bool = False) -> Digraph:
    a = draw(st.integers(1, max_side))
    b = draw(st.integers(1, max_side))
    arcs = []
    for x, y in itertools.product(range(a), range(a, a + b)):
        state = draw(st.integers(0, 2 if simple else 3))
        if state & 1:
            arcs.append((x, y))
        if state & 2:
            arcs.append((y, x))
    return Digraph(a + b, frozenset(arcs))


def c3() -> Digraph:
    return Digraph(3, frozenset({(0, 1), (1, 2), (2, 0)}))


def tt3() -> Digraph:
    return Digraph(3, frozenset({(0, 1), (1, 2), (0, 2)}))


@pytest.fixture
def triangle() -> Digraph:
    return c3()
