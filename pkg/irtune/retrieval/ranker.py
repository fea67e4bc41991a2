from typing import FrozenSet, Optional, Union

import numpy as np

from irtune.indexing.inverted_index import InvertedIndex
from irtune.retrieval.feedback import prf_expand
from irtune.retrieval.query import parse_query
from irtune.retrieval.scoring import _require_documents, score_documents
from irtune.utils.models import RetrievalConfig, RetrievalModel, Ranking, WeightedQuery

DEFAULT_DEPTH = 1000


def candidate_documents(index: InvertedIndex, query: WeightedQuery) -> np.ndarray:
    """Ordinals of documents containing at least one positively weighted query term."""
    ids = [index.postings[t][0] for t, w in query.terms.items() if w > 0 and t in index.postings]
    if not ids:
        return np.zeros(0, dtype=np.int64)
    return np.unique(np.concatenate(ids))


def _score_and_sort(
    index: InvertedIndex, query: WeightedQuery, config: RetrievalConfig, depth: int, topic: str
) -> Ranking:
    docs = candidate_documents(index, query)
    if docs.size == 0:
        return Ranking(topic=topic, entries=[], depth=depth)
    scores = score_documents(index, query, docs, config)
    return Ranking.from_scores(
        topic,
        ((index.docnos[d], s) for d, s in zip(docs.tolist(), scores.tolist())),
        depth,
    )


def rank(
    index: InvertedIndex,
    query: Union[str, WeightedQuery],
    config: RetrievalConfig,
    depth: int = DEFAULT_DEPTH,
    topic: str = "",
    stoplist: Optional[FrozenSet[str]] = None,
) -> Ranking:
    """Rank candidate documents for `query` under `config`, with optional feedback re-ranking.

    Raw query text is preprocessed with the index's own pipeline (EmptyQuery when
    nothing survives). With `config.prf` the top of a first pass feeds
    `prf_expand` and the expanded query is ranked with the same model.
    """
    _require_documents(index)
    if isinstance(query, str):
        query = parse_query(query, index.variant, stoplist)

    if not config.prf:
        return _score_and_sort(index, query, config, depth, topic)

    # First pass reaches at least fbDocs deep, whatever the output depth
    first_pass = _score_and_sort(index, query, config, max(depth, config.fbDocs), topic)
    if not first_pass.entries:
        return Ranking(topic=topic, entries=[], depth=depth)

    expanded = prf_expand(
        index, query, first_pass, config.fbDocs, config.fbTerms, config.fbMu, config.fbOrigWeight
    )
    if config.model == RetrievalModel.BM25:
        # BM25 reads weights as qtf, so restore the original query's mass
        expanded = WeightedQuery(terms={t: w * query.length for t, w in expanded.terms.items()})
    return _score_and_sort(index, expanded, config, depth, topic)
