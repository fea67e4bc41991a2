# irtune/tests/test_evaluation.py
"""Measures, fusion and per-topic reports."""
import numpy as np
import pytest

from irtune.evaluation.fusion import standardize, zsum_fuse
from irtune.evaluation.measures import average_precision, evaluate_run, ndcg, precision_at_k
from irtune.evaluation.report import (
    format_delta_table,
    format_eval_report,
    per_topic_delta,
    virtual_aggregate,
)
from irtune.evaluation.trec_io import read_qrels, read_run
from irtune.utils.errors import EmptyRun, NoOverlap, NoRelevant
from irtune.utils.models import Measure, Qrels, Ranking, RunFile

AP_QRELS = Qrels(judgments={"1": {"d1": 1, "d3": 1, "d9": 0}})


def _ranking(topic, docnos):
    return Ranking(topic=topic, entries=[(d, float(-i)) for i, d in enumerate(docnos)])


def _run(tag, table):
    return RunFile(tag=tag, rankings={t: _ranking(t, docs) for t, docs in table.items()})


def test_average_precision_example():
    assert average_precision(_ranking("1", ["d2", "d1", "d3"]), AP_QRELS, "1") == pytest.approx(0.58333, abs=1e-5)


def test_ndcg_example():
    assert ndcg(_ranking("1", ["d2", "d1", "d3"]), AP_QRELS, "1") == pytest.approx(0.69342, abs=1e-5)


def test_perfect_ranking_scores_one():
    ranking = _ranking("1", ["d1", "d3", "d2"])
    assert average_precision(ranking, AP_QRELS, "1") == 1.0
    assert ndcg(ranking, AP_QRELS, "1") == pytest.approx(1.0)
    assert precision_at_k(ranking, AP_QRELS, "1") == pytest.approx(0.2)


def test_precision_at_other_cutoffs():
    ranking = _ranking("1", ["d2", "d1", "d3"])
    assert precision_at_k(ranking, AP_QRELS, "1", k=2) == pytest.approx(0.5)
    assert precision_at_k(ranking, AP_QRELS, "1", k=1) == 0.0


def test_tied_scores_keep_the_given_order():
    tied = Ranking(topic="1", entries=[("a", 1.0), ("b", 1.0)])
    assert average_precision(tied, Qrels(judgments={"1": {"a": 1, "b": 0}}), "1") == 1.0


def test_empty_ranking_scores_zero():
    empty = Ranking(topic="1")
    assert average_precision(empty, AP_QRELS, "1") == 0.0
    assert ndcg(empty, AP_QRELS, "1") == 0.0
    assert precision_at_k(empty, AP_QRELS, "1") == 0.0


def test_measures_need_relevant_documents():
    qrels = Qrels(judgments={"1": {"d1": 0}})
    for measure in (average_precision, ndcg, precision_at_k):
        with pytest.raises(NoRelevant):
            measure(_ranking("1", ["d1"]), qrels, "1")


def test_ndcg_treats_negative_grades_as_zero():
    qrels = Qrels(judgments={"1": {"d1": 1, "d2": -1}})
    assert ndcg(_ranking("1", ["d2", "d1"]), qrels, "1") == pytest.approx(1 / np.log2(3))


def test_golden_report(fixtures_dir):
    report = evaluate_run(read_run(fixtures_dir / "golden.run"), read_qrels(fixtures_dir / "golden.qrels"))
    assert list(report.per_topic) == ["301", "302", "303", "304", "305"]
    assert report.means.ap == pytest.approx(0.51667, abs=1e-5)
    text = format_eval_report(report, per_topic=True)
    assert text == (fixtures_dir / "golden_eval.tsv").read_text()


def test_eval_report_means_only():
    report = evaluate_run(_run("ap", {"1": ["d2", "d1", "d3"]}), AP_QRELS)
    assert format_eval_report(report, [Measure.MAP], prefix="ap\t") == "ap\tmap\tall\t0.5833\n"


def test_evaluate_run_without_overlap():
    with pytest.raises(NoOverlap):
        evaluate_run(_run("x", {"2": ["d1"]}), AP_QRELS)


def test_standardize():
    assert standardize(np.array([3.0, 2.0, 1.0])).tolist() == pytest.approx([1.224745, 0.0, -1.224745], abs=1e-6)
    assert standardize(np.array([5.0, 5.0])).tolist() == [0.0, 0.0]


def test_zsum_fuse_toy_runs():
    run_a = RunFile(
        tag="a",
        rankings={
            "1": Ranking(topic="1", entries=[("d1", 3.0), ("d2", 2.0), ("d3", 1.0)]),
            "2": Ranking(topic="2", entries=[("e1", 5.0), ("e2", 5.0)]),
        },
    )
    run_b = RunFile(tag="b", rankings={"1": Ranking(topic="1", entries=[("d2", 10.0), ("d3", 8.0), ("d4", 0.0)])})
    fused = zsum_fuse(run_a, run_b)
    assert fused.tag == "fused"
    assert fused.topics() == ["1", "2"]
    assert fused.rankings["1"].docnos == ["d2", "d1", "d3", "d4"]
    z_b = (np.array([10.0, 8.0, 0.0]) - 6.0) / np.sqrt(56.0 / 3.0)
    assert fused.rankings["1"].scores == pytest.approx(
        [z_b[0], 1.224745 + z_b[2], -1.224745 + z_b[1], -1.224745 + z_b[2]], abs=1e-6
    )
    assert fused.rankings["2"].entries == [("e1", 0.0), ("e2", 0.0)]


def test_self_fusion_preserves_order(fixtures_dir):
    run = read_run(fixtures_dir / "golden.run")
    fused = zsum_fuse(run, run, tag="self")
    for topic in run.topics():
        assert fused.rankings[topic].docnos == run.rankings[topic].docnos


def test_fusion_of_disjoint_topics():
    fused = zsum_fuse(_run("a", {"1": ["x"]}), _run("b", {"2": ["y"]}))
    assert fused.topics() == ["1", "2"]


def test_fusion_rejects_empty_run():
    with pytest.raises(EmptyRun):
        zsum_fuse(RunFile(tag="a"), _run("b", {"1": ["x"]}))


def _scored_run(tag, scores):
    return RunFile(tag=tag, rankings={"1": Ranking.from_scores("1", scores.items())})


def test_fusion_equal_sums_tie_by_docno():
    # d1 and d2 both fuse to -1/sqrt(2)
    run_a = {"d0": 4.0, "d1": 0.0, "d2": 4.0}
    run_b = _scored_run("b", {"d0": 4.0, "d1": 4.0, "d2": 1.0})
    base = zsum_fuse(_scored_run("a", run_a), run_b).rankings["1"]
    moved = zsum_fuse(_scored_run("a", {d: 3 * s + 7 for d, s in run_a.items()}), run_b).rankings["1"]
    assert base.docnos == moved.docnos == ["d0", "d1", "d2"]
    assert base.entries == moved.entries


def test_fusion_order_survives_affine_rescaling():
    rng = np.random.default_rng(31)
    for _ in range(100):
        n = int(rng.integers(2, 12))
        docs = [f"d{i}" for i in range(n)]
        a = {d: float(s) for d, s in zip(docs, rng.integers(0, 6, n))}
        b = {d: float(s) for d, s in zip(docs, rng.integers(0, 6, n)) if rng.random() < 0.8} or {"d0": 1.0}
        scale, shift = float(rng.uniform(0.1, 10)), float(rng.uniform(-50, 50))
        base = zsum_fuse(_scored_run("a", a), _scored_run("b", b))
        moved = zsum_fuse(_scored_run("a", {d: scale * s + shift for d, s in a.items()}), _scored_run("b", b))
        assert moved.rankings["1"].docnos == base.rankings["1"].docnos


def test_per_topic_delta_against_perfect_baseline():
    table = per_topic_delta([_run("ap", {"1": ["d2", "d1", "d3"]})], _run("best", {"1": ["d1", "d3"]}), AP_QRELS)
    assert list(table) == ["1"]
    assert table["1"] == pytest.approx([-0.41667], abs=1e-5)


def test_per_topic_delta_self_is_zero(fixtures_dir):
    run = read_run(fixtures_dir / "golden.run")
    qrels = read_qrels(fixtures_dir / "golden.qrels")
    table = per_topic_delta([run], run, qrels, Measure.NDCG)
    assert list(table) == ["301", "302", "303", "304", "305"]
    assert all(row == [0.0] for row in table.values())
    text = format_delta_table(table, ["golden"])
    assert text.splitlines()[0] == "topic\tgolden"
    assert text.splitlines()[1] == "301\t0.0000"


def test_virtual_aggregates():
    runs = [
        _run("good", {"1": ["d1", "d3"]}),
        _run("mid", {"1": ["d2", "d1", "d3"]}),
        _run("bad", {"1": ["d2"]}),
    ]
    assert virtual_aggregate(runs, AP_QRELS, Measure.MAP, "best") == {"1": 1.0}
    assert virtual_aggregate(runs, AP_QRELS, Measure.MAP, "median") == pytest.approx({"1": 0.58333}, abs=1e-5)
    assert virtual_aggregate(runs, AP_QRELS, Measure.MAP, "worst") == {"1": 0.0}
    with pytest.raises(ValueError):
        virtual_aggregate(runs, AP_QRELS, Measure.MAP, "mean")
