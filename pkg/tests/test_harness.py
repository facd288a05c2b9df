from __future__ import annotations

import pytest

from dibchrom import harness
from dibchrom.dgf import parse_coloring, parse_dgf
from dibchrom.harness import (
    CheckSpec,
    Outcome,
    Segment,
    default_segments,
    derive_seed,
    enumerate_segments,
    family_segments,
    run_check,
)


def test_unknown_theorem():
    with pytest.raises(ValueError, match="unknown theorem id"):
        run_check(CheckSpec("theorem-99"))


def test_open_problems_cannot_assert():
    with pytest.raises(ValueError, match="exploratory"):
        run_check(CheckSpec("problem-1", mode="assert"))


def test_seed_derivation_is_stable():
    assert derive_seed(0, "random", 5) == derive_seed(0, "random", 5)
    assert derive_seed(0, "random", 5) != derive_seed(1, "random", 5)
    assert derive_seed(0, "a", 1) == 2372310422423236912


def test_enumeration_segments():
    segs = enumerate_segments(3)
    assert [s.count for s in segs] == [1, 4, 64]
    with pytest.raises(ValueError):
        enumerate_segments(6)


def test_small_enumeration(tmp_path):
    rep = run_check(CheckSpec("theorem-2", enumerate_segments(3)), workers=1, artifact_dir=tmp_path)
    assert rep.instances == 69 and rep.violations == [] and rep.ok
    assert rep.headline() == "tested 69 instances, 0 violations"
    assert not any(tmp_path.iterdir())


@pytest.mark.parametrize("theorem", ["theorem-2", "lemma-6", "theorem-9"])
def test_report_independent_of_worker_count(theorem):
    segs = tuple(Segment(s.name, s.builder, min(s.count, 12), s.params) for s in default_segments(theorem))
    one = run_check(CheckSpec(theorem, segs, seed=3), workers=1, artifact_dir=None)
    two = run_check(CheckSpec(theorem, segs, seed=3), workers=2, artifact_dir=None)
    assert one.canonical_json() == two.canonical_json()
    assert "wall_time" not in one.canonical_json()


def test_seed_changes_corpus():
    segs = (Segment("random", "random-digraph", 20),)
    a = run_check(CheckSpec("corollary-4", segs, seed=0), workers=1)
    b = run_check(CheckSpec("corollary-4", segs, seed=1), workers=1)
    assert a.summary != b.summary or a.canonical_json() != b.canonical_json()


def test_violations_are_persisted(tmp_path, monkeypatch):
    def always_fails(d, info):
        return Outcome({"n": d.n}, violation="synthetic failure")

    monkeypatch.setitem(harness.CHECKS, "theorem-2", always_fails)
    rep = run_check(CheckSpec("theorem-2", enumerate_segments(2)), workers=1, artifact_dir=tmp_path)
    assert len(rep.violations) == 5 and not rep.ok
    files = sorted(p.name for p in tmp_path.iterdir())
    assert "theorem-2-enum-n2_000003.dgf" in files
    d = parse_dgf((tmp_path / "theorem-2-enum-n2_000003.dgf").read_text())
    assert d.arcs == {(0, 1), (1, 0)}


def test_exceptions_become_violations(tmp_path, monkeypatch):
    def boom(d, info):
        raise AssertionError("kaboom")

    monkeypatch.setitem(harness.CHECKS, "corollary-4", boom)
    rep = run_check(CheckSpec("corollary-4", enumerate_segments(1)), workers=1, artifact_dir=tmp_path)
    assert rep.violations[0]["detail"] == "AssertionError: kaboom"


def test_coloring_artifact(tmp_path, monkeypatch):
    from dibchrom.coloring import Coloring

    def bad(d, info):
        return Outcome(violation="x", coloring=Coloring([1] * d.n))

    monkeypatch.setitem(harness.CHECKS, "lemma-5", bad)
    segs = (Segment("c", "connected-bipartite", 1),)
    run_check(CheckSpec("lemma-5", segs), workers=1, artifact_dir=tmp_path)
    col = next(tmp_path.glob("*.col"))
    dgf = next(tmp_path.glob("*.dgf"))
    n = parse_dgf(dgf.read_text()).n
    assert parse_coloring(col.read_text(), n).k == 1


def test_hypothesis_misses_are_skipped():
    segs = family_segments("directed-cycle", [{"n": 3}], 2)
    rep = run_check(CheckSpec("theorem-9", segs), workers=1)
    assert rep.instances == 0 and rep.skipped == 2 and rep.violations == []


def test_family_corpus_build_errors_are_skipped():
    segs = family_segments("random-bipartite", [{"n": 1, "m": 1, "delta": 1}], 3)
    rep = run_check(CheckSpec("lemma-5", segs), workers=1)
    assert rep.skipped == 3 and rep.summary["build-error"] == 3


def test_unknown_family():
    with pytest.raises(ValueError):
        family_segments("nope", [{"n": 1}], 1)


@pytest.mark.parametrize("theorem", sorted(harness.EXPLORE_CHECKS))
def test_explore_runs_never_fail(theorem):
    segs = tuple(Segment(s.name, s.builder, min(s.count, 8), s.params) for s in default_segments(theorem))
    rep = run_check(CheckSpec(theorem, segs), workers=1)
    assert rep.mode == "explore" and rep.ok
    assert rep.violations == []


def test_problem_one_records_dib_two_instances():
    rep = run_check(CheckSpec("problem-1"), workers=1)
    assert rep.instances == 300 and rep.skipped == 0
    assert any(k.startswith("components=3") for k in rep.summary)
    for item in rep.notable:
        d = parse_dgf(item["dgf"])
        ds = d.degree_summary()
        assert ds.delta_plus >= 1 and ds.delta_minus >= 1 and ds.delta_plus + ds.delta_minus >= 3


@pytest.mark.parametrize("theorem,count", [
    ("theorem-2", 4165), ("corollary-4", 4665), ("lemma-5", 1000), ("lemma-6", 1000),
    ("theorem-8", 300), ("theorem-9", 250), ("theorem-12", 400), ("theorem-13", 50), ("theorem-14", 125),
])
def test_default_corpus_sizes(theorem, count):
    assert sum(s.count for s in default_segments(theorem)) == count
