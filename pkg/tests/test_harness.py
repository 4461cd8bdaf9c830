from __future__ import annotations

import json
import random

import pytest

from antikit.digraph import OrientedGraph, graph_to_json_obj, parse_oedge, validate
from antikit.harness import (
    Counterexample,
    IoFailureError,
    STATEMENTS,
    TooLargeError,
    VerificationJob,
    VerificationReport,
    canonical_code,
    enumerate_oriented,
    graph_code,
    graph_from_code,
    job_from_json_obj,
    num_oriented,
    path_orientation,
    random_antitree,
    random_digraph,
    random_oriented,
    report_emit,
    run,
)

TRIANGLE = OrientedGraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])


# ---- enumeration --------------------------------------------------------


def test_enumeration_counts():
    assert num_oriented(2) == 3
    assert num_oriented(3) == 27
    assert sum(1 for _ in enumerate_oriented(2)) == 3
    assert sum(1 for _ in enumerate_oriented(3)) == 27
    # 7 isomorphism classes of oriented graphs on three vertices
    assert sum(1 for _ in enumerate_oriented(3, canonical=True)) == 7


def test_code_round_trip():
    for code in range(num_oriented(3)):
        g = graph_from_code(3, code)
        validate(g.edges(), g.n)
        assert graph_code(g) == code


def test_canonical_code_is_minimal():
    for code in range(num_oriented(3)):
        g = graph_from_code(3, code)
        assert canonical_code(g) <= code


def test_enumeration_size_guard():
    with pytest.raises(TooLargeError):
        list(enumerate_oriented(7))
    with pytest.raises(TooLargeError):
        canonical_code(OrientedGraph.from_edges(7, []))


def test_path_orientation_bits():
    g = path_orientation(2, 0b01)
    assert sorted(g.edges()) == [(0, 1), (2, 1)]
    assert sorted(path_orientation(3, 0b111).edges()) == [(0, 1), (1, 2), (2, 3)]


def test_random_generators_are_valid():
    rng = random.Random(5)
    for _ in range(20):
        g = random_oriented(7, rng)
        validate(g.edges(), g.n)
        d = random_digraph(7, rng)
        assert all(not d.has_edge(v, v) for v in range(d.n))
        tree = random_antitree(9, rng)
        assert tree.n == 9


# ---- jobs ----------------------------------------------------------------


def test_job_rejects_bad_input():
    with pytest.raises(ValueError):
        VerificationJob(statement="four_color_theorem")
    with pytest.raises(ValueError):
        VerificationJob(statement="peel_lemma", mode="psychic")
    with pytest.raises(TooLargeError):
        VerificationJob(statement="path_conjecture", n_range=(7,))
    # the blow-up statement builds its own hosts, so no n cap applies
    VerificationJob(statement="blowup_tightness", n_range=(50,))


def test_job_json_round_trip():
    job = VerificationJob(
        statement="peel_lemma", n_range=(8, 9), k_range=(2,), mode="sampled", seed=3
    )
    again = job_from_json_obj(json.loads(json.dumps(job.to_json_obj())))
    assert again == job
    assert isinstance(again.n_range, tuple)


# ---- statement runs ------------------------------------------------------


def test_run_path_conjecture_n3():
    report = run(VerificationJob(statement="path_conjecture", n_range=(3,)))
    # only the two directed triangles have positive min semidegree, and
    # delta=1 admits k=1 only: 2 hosts x 2 orientation bits
    assert report.instances_checked == 4
    assert report.passed


def test_run_antimatching_lemma5_n3():
    report = run(VerificationJob(statement="antimatching_lemma5", n_range=(3,)))
    assert report.instances_checked == 6  # 2 triangles x 3 anchors x t=1
    assert report.passed


def test_run_antimatching_lemma6_n3():
    report = run(VerificationJob(statement="antimatching_lemma6", n_range=(3,)))
    assert report.instances_checked == 6
    assert report.passed


def test_run_peel_lemma_sampled():
    job = VerificationJob(
        statement="peel_lemma",
        n_range=(8,),
        k_range=(2, 3),
        mode="sampled",
        sample_count=16,
        seed=1,
    )
    report = run(job)
    assert report.passed
    assert report.instances_checked > 0


def test_run_gadget_pullback_sampled():
    job = VerificationJob(
        statement="gadget_pullback",
        n_range=(4,),
        mode="sampled",
        sample_count=6,
        seed=2,
    )
    report = run(job)
    assert report.passed
    assert report.instances_checked > 0


def test_run_antitree_density_sampled():
    job = VerificationJob(
        statement="antitree_density",
        n_range=(8,),
        k_range=(2,),
        mode="sampled",
        sample_count=10,
        seed=4,
    )
    report = run(job)
    assert report.passed
    assert report.instances_checked > 0


def test_run_blowup_tightness():
    report = run(VerificationJob(statement="blowup_tightness", k_range=(1, 2)))
    assert report.instances_checked == 2
    assert report.passed


def test_statement_list_is_runnable():
    assert len(STATEMENTS) == 7


def test_reports_are_deterministic():
    job = VerificationJob(
        statement="peel_lemma", n_range=(8,), k_range=(2,), mode="sampled",
        sample_count=8, seed=9,
    )
    a = run(job)
    b = run(job)
    assert a.canonical_json() == b.canonical_json()


def test_parallel_workers_match_inline(monkeypatch):
    job = VerificationJob(statement="antimatching_lemma5", n_range=(3,))
    inline = run(job)
    monkeypatch.setenv("ANTIKIT_WORKERS", "2")
    fanned = run(job)
    assert fanned.canonical_json() == inline.canonical_json()


# ---- report emission -----------------------------------------------------


def test_report_emit_pass(tmp_path):
    report = run(VerificationJob(statement="blowup_tightness", k_range=(1,)))
    out = tmp_path / "out"
    report_emit(report, str(out))
    summary = (out / "summary.txt").read_text()
    assert summary.startswith("PASS blowup_tightness: 1 instances, 0 counterexamples")
    on_disk = json.loads((out / "report.json").read_text())
    assert job_from_json_obj(on_disk["job"]) == report.job
    assert on_disk["instances_checked"] == 1


def test_report_emit_failure_sidecars(tmp_path):
    cx = Counterexample(
        note="synthetic",
        host=graph_to_json_obj(TRIANGLE),
        pattern=graph_to_json_obj(path_orientation(1, 1)),
    )
    report = VerificationReport(
        job=VerificationJob(statement="path_conjecture", n_range=(3,)),
        instances_checked=1,
        counterexamples=(cx,),
        elapsed_ms=0,
    )
    assert not report.passed
    report_emit(report, str(tmp_path))
    summary = (tmp_path / "summary.txt").read_text()
    assert summary.startswith("FAIL path_conjecture:")
    assert "cx 0: synthetic" in summary
    host = parse_oedge((tmp_path / "cx_0000_host.oedge").read_text())
    assert host == TRIANGLE
    pattern = parse_oedge((tmp_path / "cx_0000_pattern.oedge").read_text())
    assert sorted(pattern.edges()) == [(0, 1)]


def test_report_emit_io_failure(tmp_path):
    blocker = tmp_path / "taken"
    blocker.write_text("not a directory\n")
    report = run(VerificationJob(statement="blowup_tightness", k_range=(1,)))
    with pytest.raises(IoFailureError):
        report_emit(report, str(blocker / "sub"))
