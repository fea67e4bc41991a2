# irtune/tests/test_bo_loop.py
"""End-to-end behaviour of the optimize-evaluate graph."""
import numpy as np
import pytest

from irtune.bayesopt.history import HistoryWriter, read_history
from irtune.bayesopt.objective import RetrievalObjective, random_search, synthetic_objective
from irtune.bayesopt.state import LoopSettings
from irtune.evaluation.trec_io import read_qrels
from irtune.graph import run_bo_loop
from irtune.hyperspace.space import TUNING_SPACE, Dimension, DimensionKind, SpaceDef
from irtune.retrieval.query import read_topics
from irtune.utils.errors import ObjectiveError

LINE = SpaceDef(dimensions=(Dimension(name="x", kind=DimensionKind.REAL, low=0.0, high=1.0),))
FAST = LoopSettings(budget=12, init_n=4, n_candidates=200, refit_every=3)


def quadratic(point):
    return -((point["x"] - 0.3) ** 2)


def test_history_length_and_incumbents():
    state = run_bo_loop(synthetic_objective, TUNING_SPACE, FAST)
    assert len(state.history) == 12
    incumbents = state.incumbents()
    assert all(a <= b for a, b in zip(incumbents, incumbents[1:]))
    assert state.best[1] == incumbents[-1]


def test_same_seed_same_history():
    a = run_bo_loop(synthetic_objective, TUNING_SPACE, FAST)
    b = run_bo_loop(synthetic_objective, TUNING_SPACE, FAST)
    assert [o.point for o in a.history] == [o.point for o in b.history]
    assert [o.y for o in a.history] == [o.y for o in b.history]
    c = run_bo_loop(synthetic_objective, TUNING_SPACE, FAST, seed=7)
    assert [o.point for o in c.history] != [o.point for o in a.history]


def test_budget_equal_to_init_is_random_search():
    state = run_bo_loop(synthetic_objective, TUNING_SPACE, FAST, budget=5, init_n=5, seed=11)
    baseline = random_search(synthetic_objective, TUNING_SPACE, 5, seed=11)
    assert [o.point for o in state.history] == [o.point for o in baseline.history]
    assert state.best[1] == baseline.best[1]


def test_resumed_history_is_byte_identical(tmp_path):
    straight = tmp_path / "straight.tsv"
    with HistoryWriter(straight, TUNING_SPACE) as writer:
        run_bo_loop(synthetic_objective, TUNING_SPACE, FAST, sink=writer.write)

    resumed = tmp_path / "resumed.tsv"
    with HistoryWriter(resumed, TUNING_SPACE) as writer:
        run_bo_loop(synthetic_objective, TUNING_SPACE, FAST, budget=8, sink=writer.write)
    history = read_history(resumed, TUNING_SPACE)
    with HistoryWriter(resumed, TUNING_SPACE, append=True) as writer:
        state = run_bo_loop(synthetic_objective, TUNING_SPACE, FAST, history=history, sink=writer.write)

    assert len(state.history) == 12
    assert resumed.read_bytes() == straight.read_bytes()


def test_complete_history_is_not_extended():
    first = run_bo_loop(synthetic_objective, TUNING_SPACE, FAST, budget=4)
    again = run_bo_loop(synthetic_objective, TUNING_SPACE, FAST, budget=4, history=first.history)
    assert len(again.history) == 4


def test_objective_failure_keeps_partial_history():
    calls = []

    def flaky(point):
        if len(calls) == 3:
            raise RuntimeError("index went away")
        calls.append(point)
        return 0.1 * len(calls)

    records = []
    with pytest.raises(ObjectiveError, match="iteration 4"):
        run_bo_loop(flaky, TUNING_SPACE, FAST, sink=lambda i, obs, best: records.append((i, obs.y, best)))
    assert [r[0] for r in records] == [1, 2, 3]
    assert records[-1][2] == pytest.approx(0.3)


def test_quadratic_optimum_is_found():
    hits = 0
    for seed in range(10):
        state = run_bo_loop(quadratic, LINE, budget=20, init_n=5, n_candidates=500, seed=seed)
        if abs(state.best[0]["x"] - 0.3) <= 0.05:
            hits += 1
    assert hits >= 9


def test_synthetic_effectiveness_against_random_search():
    bo_best, random_best = [], []
    for seed in range(10):
        state = run_bo_loop(synthetic_objective, TUNING_SPACE, budget=50, init_n=10, n_candidates=500, seed=seed)
        bo_best.append(state.best[1])
        random_best.append(random_search(synthetic_objective, TUNING_SPACE, 50, seed=seed + 1000).best[1])
    assert sum(1 for y in bo_best if y >= 0.95) >= 7
    assert np.median(bo_best) > np.median(random_best)


def test_retrieval_effectiveness_against_random_search(fixture_indexes, fixtures_dir):
    objective = RetrievalObjective(
        fixture_indexes, read_topics(fixtures_dir / "topics.trec"), read_qrels(fixtures_dir / "fixture.qrels")
    )
    wins = 0
    for seed in range(5):
        bo = run_bo_loop(objective, TUNING_SPACE, budget=40, init_n=10, n_candidates=300, seed=seed)
        baseline = random_search(objective, TUNING_SPACE, 40, seed=seed + 1000)
        if bo.best[1] >= baseline.best[1]:
            wins += 1
    assert wins >= 3
