"""Scoring functions of the five retrieval models.

Each model has a vectorized form (`*_scores`, over an array of document
ordinals) and a single-document form (`score_*`) built on it, so ranking and
point scoring share one code path. Probabilities inside logarithms are floored
at EPSILON, which keeps every score finite over the whole parameter box.
"""
from typing import Union

import numpy as np

from irtune.indexing.inverted_index import InvertedIndex, collection_prob
from irtune.utils.errors import DegenerateSmoothing, EmptyIndex
from irtune.utils.models import RetrievalConfig, RetrievalModel, WeightedQuery

EPSILON = 1e-12

DocRef = Union[int, str]


def _require_documents(index: InvertedIndex) -> None:
    if index.N == 0:
        raise EmptyIndex("index contains no documents")


def _ordinal(index: InvertedIndex, doc: DocRef) -> int:
    if isinstance(doc, str):
        return index.ordinals[doc]
    return int(doc)


def term_frequencies(index: InvertedIndex, term: str, docs: np.ndarray) -> np.ndarray:
    posting = index.postings.get(term)
    if posting is None or docs.size == 0:
        return np.zeros(docs.shape, dtype=np.float64)
    ids, tfs = posting
    pos = np.minimum(np.searchsorted(ids, docs), ids.size - 1)
    return np.where(ids[pos] == docs, tfs[pos], 0).astype(np.float64)


def _length_ratio(index: InvertedIndex, dl: np.ndarray) -> np.ndarray:
    avdl = index.avdl
    return dl / avdl if avdl > 0 else np.zeros_like(dl)


def _log_floor(p: np.ndarray) -> np.ndarray:
    return np.log(np.maximum(p, EPSILON))


def _weighted_terms(query: WeightedQuery):
    return [(term, weight) for term, weight in query.terms.items() if weight > 0]


# --- vectorized -----------------------------------------------------------

def tfidf_scores(index: InvertedIndex, query: WeightedQuery, docs: np.ndarray, k1: float, b: float) -> np.ndarray:
    """Okapi-normalized tf times idf squared, idf = ln((N+1)/(df+0.5))."""
    _require_documents(index)
    dl = index.doc_lengths[docs].astype(np.float64)
    norm = k1 * (1.0 - b + b * _length_ratio(index, dl))
    scores = np.zeros(docs.shape, dtype=np.float64)
    for term, weight in _weighted_terms(query):
        tf = term_frequencies(index, term, docs)
        idf = np.log((index.N + 1.0) / (index.df.get(term, 0) + 0.5))
        tfn = np.where(tf > 0, k1 * tf / (tf + norm), 0.0)
        scores += weight * tfn * idf * idf
    return scores


def bm25_scores(
    index: InvertedIndex, query: WeightedQuery, docs: np.ndarray, k1: float, k3: float, b: float
) -> np.ndarray:
    """Okapi BM25 with idf floored at 0; query weights act as (possibly real-valued) qtf."""
    _require_documents(index)
    dl = index.doc_lengths[docs].astype(np.float64)
    norm = k1 * (1.0 - b + b * _length_ratio(index, dl))
    scores = np.zeros(docs.shape, dtype=np.float64)
    for term, qtf in _weighted_terms(query):
        df = index.df.get(term, 0)
        idf = max(np.log((index.N - df + 0.5) / (df + 0.5)), 0.0)
        if idf == 0.0:
            continue
        tf = term_frequencies(index, term, docs)
        tf_part = np.where(tf > 0, tf * (k1 + 1.0) / (tf + norm), 0.0)
        qtf_part = qtf * (k3 + 1.0) / (k3 + qtf)
        scores += idf * tf_part * qtf_part
    return scores


def lm_jm_scores(
    index: InvertedIndex, query: WeightedQuery, docs: np.ndarray, lambda_doc: float, lambda_col: float
) -> np.ndarray:
    """Jelinek-Mercer smoothing with the two weights renormalized to sum to 1."""
    _require_documents(index)
    if lambda_doc + lambda_col <= 0:
        raise DegenerateSmoothing("lambda_doc and lambda_col are both 0")
    a = lambda_doc / (lambda_doc + lambda_col)
    c = 1.0 - a
    dl = index.doc_lengths[docs].astype(np.float64)
    safe_dl = np.where(dl > 0, dl, 1.0)
    scores = np.zeros(docs.shape, dtype=np.float64)
    for term, weight in _weighted_terms(query):
        tf = term_frequencies(index, term, docs)
        p_ml = np.where(dl > 0, tf / safe_dl, 0.0)
        scores += weight * _log_floor(a * p_ml + c * collection_prob(index, term))
    return scores


def _dirichlet(index: InvertedIndex, term: str, tf: np.ndarray, dl: np.ndarray, mu: float) -> np.ndarray:
    return (tf + mu * collection_prob(index, term)) / (dl + mu)


def lm_dir_scores(index: InvertedIndex, query: WeightedQuery, docs: np.ndarray, mu: float) -> np.ndarray:
    """Query likelihood with Dirichlet prior smoothing."""
    _require_documents(index)
    dl = index.doc_lengths[docs].astype(np.float64)
    if mu == 0 and np.any(dl == 0):
        raise DegenerateSmoothing("mu = 0 on an empty document")
    scores = np.zeros(docs.shape, dtype=np.float64)
    for term, weight in _weighted_terms(query):
        tf = term_frequencies(index, term, docs)
        scores += weight * _log_floor(_dirichlet(index, term, tf, dl, mu))
    return scores


def lm_ts_scores(
    index: InvertedIndex, query: WeightedQuery, docs: np.ndarray, mu_ts: float, lambda_ts: float
) -> np.ndarray:
    """Two-stage smoothing: Dirichlet estimate interpolated with the collection model."""
    _require_documents(index)
    dl = index.doc_lengths[docs].astype(np.float64)
    if mu_ts == 0 and np.any(dl == 0):
        raise DegenerateSmoothing("mu_ts = 0 on an empty document")
    scores = np.zeros(docs.shape, dtype=np.float64)
    for term, weight in _weighted_terms(query):
        tf = term_frequencies(index, term, docs)
        p_col = collection_prob(index, term)
        p = (1.0 - lambda_ts) * _dirichlet(index, term, tf, dl, mu_ts) + lambda_ts * p_col
        scores += weight * _log_floor(p)
    return scores


def score_documents(
    index: InvertedIndex, query: WeightedQuery, docs: np.ndarray, config: RetrievalConfig
) -> np.ndarray:
    """Score `docs` under `config.model`, reading only the parameters that model uses."""
    docs = np.asarray(docs, dtype=np.int64)
    model = config.model
    if model == RetrievalModel.TFIDF:
        return tfidf_scores(index, query, docs, config.tfidf_k1, config.tfidf_b)
    if model == RetrievalModel.BM25:
        return bm25_scores(index, query, docs, config.bm25_k1, config.bm25_k3, config.bm25_b)
    if model == RetrievalModel.LM_JM:
        return lm_jm_scores(index, query, docs, config.lambda_doc, config.lambda_col)
    if model == RetrievalModel.LM_DIR:
        return lm_dir_scores(index, query, docs, config.mu_dir)
    return lm_ts_scores(index, query, docs, config.mu_ts, config.lambda_ts)


# --- single document ------------------------------------------------------

def _one(index: InvertedIndex, doc: DocRef) -> np.ndarray:
    return np.asarray([_ordinal(index, doc)], dtype=np.int64)


def score_tfidf(index: InvertedIndex, query: WeightedQuery, doc: DocRef, k1: float, b: float) -> float:
    return float(tfidf_scores(index, query, _one(index, doc), k1, b)[0])


def score_bm25(index: InvertedIndex, query: WeightedQuery, doc: DocRef, k1: float, k3: float, b: float) -> float:
    return float(bm25_scores(index, query, _one(index, doc), k1, k3, b)[0])


def score_lm_jm(index: InvertedIndex, query: WeightedQuery, doc: DocRef, lambda_doc: float, lambda_col: float) -> float:
    return float(lm_jm_scores(index, query, _one(index, doc), lambda_doc, lambda_col)[0])


def score_lm_dir(index: InvertedIndex, query: WeightedQuery, doc: DocRef, mu: float) -> float:
    return float(lm_dir_scores(index, query, _one(index, doc), mu)[0])


def score_lm_ts(index: InvertedIndex, query: WeightedQuery, doc: DocRef, mu_ts: float, lambda_ts: float) -> float:
    return float(lm_ts_scores(index, query, _one(index, doc), mu_ts, lambda_ts)[0])
