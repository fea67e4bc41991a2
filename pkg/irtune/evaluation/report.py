"""Text reports: eval tables, per-topic deltas and virtual aggregate systems."""
from typing import Dict, List, Mapping, Sequence, Union

import numpy as np

from irtune.evaluation.measures import evaluate_run
from irtune.utils.models import Measure, MeasureReport, Qrels, RunFile, topic_sort_key

AGGREGATES = ("best", "median", "worst")

TopicValues = Dict[str, float]


def topic_values(report: MeasureReport, measure: Measure) -> TopicValues:
    return {topic: m.value(measure) for topic, m in report.per_topic.items()}


def virtual_aggregate(runs: Sequence[RunFile], qrels: Qrels, measure: Measure, kind: str = "best") -> TopicValues:
    """Per-topic best, median or worst value of `measure` across a pool of runs."""
    if kind not in AGGREGATES:
        raise ValueError(f"aggregate must be one of {AGGREGATES}, got {kind!r}")
    if not runs:
        raise ValueError("aggregate needs at least one run")
    tables = [topic_values(evaluate_run(run, qrels), measure) for run in runs]
    reducer = {"best": np.max, "median": np.median, "worst": np.min}[kind]
    return {topic: float(reducer([t[topic] for t in tables])) for topic in tables[0]}


def per_topic_delta(
    runs: Sequence[RunFile],
    baseline: Union[RunFile, Mapping[str, float]],
    qrels: Qrels,
    measure: Measure = Measure.MAP,
) -> Dict[str, List[float]]:
    """topic -> [measure(run) - measure(baseline) for each run], one row per evaluable topic.

    `baseline` is a run or precomputed per-topic values such as a virtual aggregate.
    """
    if isinstance(baseline, RunFile):
        base = topic_values(evaluate_run(baseline, qrels), measure)
    else:
        base = dict(baseline)
    tables = [topic_values(evaluate_run(run, qrels), measure) for run in runs]
    return {
        topic: [t[topic] - base.get(topic, 0.0) for t in tables]
        for topic in sorted(qrels.evaluable_topics(), key=topic_sort_key)
    }


def format_delta_table(table: Mapping[str, Sequence[float]], tags: Sequence[str]) -> str:
    lines = ["topic\t" + "\t".join(tags)]
    for topic, deltas in table.items():
        lines.append(topic + "\t" + "\t".join(f"{d:.4f}" for d in deltas))
    return "\n".join(lines) + "\n"


def format_eval_report(
    report: MeasureReport,
    measures: Sequence[Measure] = (Measure.MAP, Measure.NDCG, Measure.P10),
    per_topic: bool = False,
    prefix: str = "",
) -> str:
    """`measure<TAB>topic|all<TAB>value` lines, 4 decimals, per-topic rows first."""
    lines = []
    if per_topic:
        for topic in sorted(report.per_topic, key=topic_sort_key):
            for measure in measures:
                lines.append(f"{prefix}{measure.value}\t{topic}\t{report.per_topic[topic].value(measure):.4f}")
    for measure in measures:
        lines.append(f"{prefix}{measure.value}\tall\t{report.means.value(measure):.4f}")
    return "\n".join(lines) + "\n"
