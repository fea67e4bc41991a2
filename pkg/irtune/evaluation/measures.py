"""AP, NDCG and P@10 through ir_measures (trec_eval's map, ndcg and P_10)."""
import math
from typing import Dict, Mapping

import ir_measures
from ir_measures import AP, P, nDCG

from irtune.utils.errors import NoOverlap, NoRelevant
from irtune.utils.models import MeasureReport, Measures, Qrels, Ranking, RunFile

MEASURE_FIELDS = {str(AP): "ap", str(nDCG): "ndcg", str(P @ 10): "p10"}


def _relevant_or_raise(qrels: Qrels, topic: str):
    relevant = qrels.relevant(topic)
    if not relevant:
        raise NoRelevant(topic)
    return relevant


def _library_qrels(qrels: Qrels, topics) -> Dict[str, Dict[str, int]]:
    # Negative grades carry no gain
    return {t: {d: max(g, 0) for d, g in qrels.judgments.get(t, {}).items()} for t in topics}


def _library_run(rankings: Mapping[str, Ranking]) -> Dict[str, Dict[str, float]]:
    # Scores from rank keep the ranking as given, whatever trec_eval's own tie order
    return {
        topic: {docno: float(len(ranking) - i) for i, docno in enumerate(ranking.docnos)}
        for topic, ranking in rankings.items()
        if len(ranking)
    }


def _calc(rankings: Mapping[str, Ranking], qrels: Qrels) -> Dict[str, Measures]:
    """Measures per topic; every topic must have a relevant document, empty rankings score 0."""
    for topic in rankings:
        _relevant_or_raise(qrels, topic)
    values: Dict[str, Dict[str, float]] = {topic: {"ap": 0.0, "ndcg": 0.0, "p10": 0.0} for topic in rankings}
    run = _library_run(rankings)
    if run:
        for metric in ir_measures.iter_calc([AP, nDCG, P @ 10], _library_qrels(qrels, run), run):
            values[metric.query_id][MEASURE_FIELDS[str(metric.measure)]] = min(float(metric.value), 1.0)
    return {topic: Measures(**v) for topic, v in values.items()}


def topic_measures(ranking: Ranking, qrels: Qrels, topic: str) -> Measures:
    return _calc({topic: ranking}, qrels)[topic]


def average_precision(ranking: Ranking, qrels: Qrels, topic: str) -> float:
    return topic_measures(ranking, qrels, topic).ap


def ndcg(ranking: Ranking, qrels: Qrels, topic: str) -> float:
    """Linear gains (negative grades count as 0), log2(k+1) discount, no cutoff."""
    return topic_measures(ranking, qrels, topic).ndcg


def precision_at_k(ranking: Ranking, qrels: Qrels, topic: str, k: int = 10) -> float:
    if k == 10:
        return topic_measures(ranking, qrels, topic).p10
    _relevant_or_raise(qrels, topic)
    run = _library_run({topic: ranking})
    if not run:
        return 0.0
    measure = P @ k
    return ir_measures.calc_aggregate([measure], _library_qrels(qrels, run), run)[measure]


def evaluate_run(run: RunFile, qrels: Qrels) -> MeasureReport:
    """Measures for every topic with a relevant document; topics missing from the run score 0."""
    topics = qrels.evaluable_topics()
    if not set(topics) & set(run.rankings):
        raise NoOverlap(f"run {run.tag} shares no evaluable topic with the qrels")
    per_topic = _calc({topic: run.rankings.get(topic) or Ranking(topic=topic) for topic in topics}, qrels)
    n = len(per_topic)
    means = Measures(
        ap=min(math.fsum(m.ap for m in per_topic.values()) / n, 1.0),
        ndcg=min(math.fsum(m.ndcg for m in per_topic.values()) / n, 1.0),
        p10=min(math.fsum(m.p10 for m in per_topic.values()) / n, 1.0),
    )
    return MeasureReport(per_topic=per_topic, means=means)
