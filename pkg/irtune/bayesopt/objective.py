"""Objective functions for the optimizer, plus a random-search baseline."""
import math
from typing import Callable, Dict, FrozenSet, Mapping, Optional

from irtune.bayesopt.state import BoState, Observation, iteration_rng
from irtune.evaluation.measures import evaluate_run
from irtune.hyperspace.space import ConfigPoint, SpaceDef, encode, sample_random, to_retrieval_config
from irtune.indexing.inverted_index import InvertedIndex
from irtune.retrieval.query import parse_query
from irtune.retrieval.ranker import rank
from irtune.utils.errors import EmptyQuery, ObjectiveError
from irtune.utils.logging_utils import get_logger
from irtune.utils.models import IndexVariant, Qrels, Ranking, RunFile, WeightedQuery

logger = get_logger("Objective")

Objective = Callable[[ConfigPoint], float]


class RetrievalObjective:
    """MAP of a configuration over a topic set, with queries preprocessed once per index variant."""

    def __init__(
        self,
        indexes: Mapping[IndexVariant, InvertedIndex],
        topics: Mapping[str, str],
        qrels: Qrels,
        depth: int = 1000,
        stoplist: Optional[FrozenSet[str]] = None,
    ):
        self.indexes = dict(indexes)
        self.topics = dict(topics)
        self.qrels = qrels
        self.depth = depth
        self.stoplist = stoplist
        self._queries: Dict[IndexVariant, Dict[str, Optional[WeightedQuery]]] = {}

    def queries(self, variant: IndexVariant) -> Dict[str, Optional[WeightedQuery]]:
        if variant not in self._queries:
            parsed: Dict[str, Optional[WeightedQuery]] = {}
            for topic, text in self.topics.items():
                try:
                    parsed[topic] = parse_query(text, variant, self.stoplist)
                except EmptyQuery:
                    logger.warning(f"Topic {topic} has no query terms under {variant.dirname}; ranking it empty")
                    parsed[topic] = None
            self._queries[variant] = parsed
        return self._queries[variant]

    def run(self, point: ConfigPoint, tag: str = "objective") -> RunFile:
        variant, config = to_retrieval_config(point)
        index = self.indexes.get(variant)
        if index is None:
            raise ObjectiveError(f"no index for variant {variant.dirname}")
        rankings = {}
        for topic, query in self.queries(variant).items():
            if query is None:
                rankings[topic] = Ranking(topic=topic, depth=self.depth)
            else:
                rankings[topic] = rank(index, query, config, self.depth, topic=topic)
        return RunFile(tag=tag, rankings=rankings)

    def __call__(self, point: ConfigPoint) -> float:
        return evaluate_run(self.run(point), self.qrels).means.ap


def objective_map(
    indexes: Mapping[IndexVariant, InvertedIndex],
    topics: Mapping[str, str],
    qrels: Qrels,
    point: ConfigPoint,
    depth: int = 1000,
) -> float:
    """MAP of `point`: pick the variant's index, rank every topic, evaluate."""
    return RetrievalObjective(indexes, topics, qrels, depth)(point)


# --- synthetic ------------------------------------------------------------

SYNTHETIC_PEAK_MU = 721.0


def _bump(value: float, center: float, span: float, width: float = 0.25) -> float:
    return math.exp(-(((value - center) / span) ** 2) / (2 * width**2))


def synthetic_objective(point: ConfigPoint) -> float:
    """Smooth conditional test function with maximum 1.0 at rm=LM_DIR, mu_dir=721, prf=true."""
    v = point.values
    rm = v["rm"]
    if rm == "LM_DIR":
        model = 0.5 + 0.5 * _bump(v["mu_dir"], SYNTHETIC_PEAK_MU, 3000.0)
    elif rm == "LM_TS":
        model = 0.35 + 0.1 * _bump(v["mu_ts"], 1500.0, 3000.0) * (1.0 - 0.5 * v["lambda_ts"])
    elif rm == "BM25":
        model = 0.3 + 0.15 * _bump(v["bm25_k1"], 1.2, 9.0) * (1.0 - (v["bm25_b"] - 0.75) ** 2)
    elif rm == "LM_JM":
        model = 0.3 + 0.1 * v["lambda_doc"] * (1.0 - v["lambda_col"] / 2)
    else:
        model = 0.3 + 0.1 * _bump(v["tfidf_k1"], 1.5, 1.0) * v["tfidf_b"]
    if v["prf"]:
        feedback = 1.0 - 0.03 * ((v["fbOrigWeight"] - 0.5) / 0.5) ** 2
    else:
        feedback = 0.8
    return model * feedback


# --- baseline -------------------------------------------------------------

def random_search(objective: Objective, space: SpaceDef, budget: int, seed: int = 42) -> BoState:
    """Evaluate `budget` uniformly random valid points (same per-iteration seeding as the BO loop)."""
    state = BoState(budget=budget, seed=seed)
    for iteration in range(1, budget + 1):
        point = sample_random(space, iteration_rng(seed, iteration))
        state.history.append(Observation(x=encode(space, point), point=point, y=objective(point)))
    return state

