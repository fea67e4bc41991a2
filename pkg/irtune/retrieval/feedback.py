"""Relevance-model query expansion from a first-pass ranking."""
import math
from typing import Dict

import numpy as np

from irtune.indexing.inverted_index import InvertedIndex, collection_prob
from irtune.utils.models import Ranking, WeightedQuery


def feedback_weights(scores: np.ndarray) -> np.ndarray:
    """Softmax of first-pass scores, shifted by the maximum."""
    shifted = np.exp(scores - scores.max())
    return shifted / shifted.sum()


def relevance_model(index: InvertedIndex, first_pass: Ranking, fbDocs: int, fbMu: float) -> Dict[str, float]:
    """p(t|R) from the top `fbDocs` documents, before the fbTerms cut.

    With fbMu > 0 every vocabulary term gets smoothing mass, so the result is
    a distribution over the whole vocabulary.
    """
    top = first_pass.entries[:fbDocs]
    weights = feedback_weights(np.asarray([score for _, score in top], dtype=np.float64))
    vectors = index.term_vectors
    feedback = []
    for (docno, _), weight in zip(top, weights.tolist()):
        ordinal = index.ordinals[docno]
        dl = float(index.doc_lengths[ordinal])
        if dl + fbMu <= 0:
            continue
        feedback.append((vectors[ordinal], dl, weight))

    p_rel: Dict[str, float] = {}
    if fbMu > 0:
        background = math.fsum(weight * fbMu / (dl + fbMu) for _, dl, weight in feedback)
        p_rel = {term: background * collection_prob(index, term) for term in index.postings}
    for tv, dl, weight in feedback:
        for term, tf in tv.items():
            p_rel[term] = p_rel.get(term, 0.0) + weight * tf / (dl + fbMu)
    return p_rel


def prf_expand(
    index: InvertedIndex,
    original: WeightedQuery,
    first_pass: Ranking,
    fbDocs: int,
    fbTerms: int,
    fbMu: float,
    fbOrigWeight: float,
) -> WeightedQuery:
    """Interpolate the normalized original query with the top-`fbTerms` relevance model.

    Output weights sum to 1. Terms whose mixed weight is 0 are dropped, so
    fbOrigWeight=1 returns exactly the normalized original query.
    """
    p_orig = original.normalized().terms
    if not first_pass.entries or fbOrigWeight >= 1.0:
        return WeightedQuery(terms=dict(p_orig))

    p_rel = relevance_model(index, first_pass, fbDocs, fbMu)
    kept = sorted(p_rel.items(), key=lambda item: (-item[1], item[0]))[:fbTerms]
    mass = sum(p for _, p in kept)
    if mass <= 0:
        return WeightedQuery(terms=dict(p_orig))
    expansion = {term: p / mass for term, p in kept}

    mixed: Dict[str, float] = {}
    for term in sorted(set(p_orig) | set(expansion)):
        weight = fbOrigWeight * p_orig.get(term, 0.0) + (1.0 - fbOrigWeight) * expansion.get(term, 0.0)
        if weight > 0:
            mixed[term] = weight
    total = sum(mixed.values())
    return WeightedQuery(terms={term: weight / total for term, weight in mixed.items()})
