import math
from typing import Dict

import numpy as np

from irtune.utils.errors import EmptyRun
from irtune.utils.models import Ranking, RunFile, topic_sort_key

# Fused sums are rounded so that mathematically equal sums tie exactly
FUSED_DECIMALS = 9


def standardize(scores: np.ndarray) -> np.ndarray:
    """Per-topic z-scores with the population std; all zeros when every score is equal."""
    if scores.size == 0:
        return scores
    if np.ptp(scores) == 0:
        return np.zeros_like(scores)
    std = scores.std()
    return (scores - scores.mean()) / std


def _z_table(ranking: Ranking) -> Dict[str, float]:
    z = standardize(np.asarray(ranking.scores, dtype=np.float64))
    return dict(zip(ranking.docnos, z.tolist()))


def zsum_fuse(runA: RunFile, runB: RunFile, tag: str = "fused") -> RunFile:
    """Sum per-topic standardized scores of two runs.

    A document missing from one run gets that run's minimum z for the topic;
    a run without the topic contributes 0.
    """
    for run in (runA, runB):
        if not any(len(r) for r in run.rankings.values()):
            raise EmptyRun(f"run {run.tag} has no entries")
    depth = max(r.depth for run in (runA, runB) for r in run.rankings.values())

    rankings: Dict[str, Ranking] = {}
    for topic in sorted(set(runA.rankings) | set(runB.rankings), key=topic_sort_key):
        tables = [_z_table(run.rankings[topic]) for run in (runA, runB) if topic in run.rankings]
        tables = [(table, min(table.values())) for table in tables if table]
        fused = {
            docno: round(math.fsum(table.get(docno, floor) for table, floor in tables), FUSED_DECIMALS) + 0.0
            for docno in set().union(*(table for table, _ in tables))
        }
        rankings[topic] = Ranking.from_scores(topic, fused.items(), depth)
    return RunFile(tag=tag, rankings=rankings)
