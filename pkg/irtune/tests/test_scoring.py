# irtune/tests/test_scoring.py
"""Scoring functions against hand values and a brute-force oracle over raw counts."""
import math
from collections import Counter

import numpy as np
import pytest

from irtune.hyperspace.space import TUNING_SPACE, ConfigPoint, sample_random, to_retrieval_config
from irtune.indexing.inverted_index import build_index
from irtune.retrieval.scoring import (
    EPSILON,
    score_bm25,
    score_documents,
    score_lm_dir,
    score_lm_jm,
    score_lm_ts,
    score_tfidf,
)
from irtune.utils.errors import DegenerateSmoothing, EmptyIndex
from irtune.utils.models import Document, IndexVariant, RetrievalConfig, RetrievalModel, WeightedQuery

PLAIN = IndexVariant(stopper=False, stemmer=False)
VOCAB = ["bear", "cub", "river", "fish", "snow", "sun"]
ORACLE_VOCAB = VOCAB + [f"w{i}" for i in range(44)]


def q(**terms):
    return WeightedQuery(terms=terms)


def test_tfidf_example(tiny_index):
    tfn = 1.2 * 1 / (1 + 1.2 * (0.25 + 0.75 * 0.6))
    assert tfn == pytest.approx(0.652174, abs=1e-6)
    idf = math.log(4 / 2.5)
    assert score_tfidf(tiny_index, q(bear=1.0), "d2", 1.2, 0.75) == pytest.approx(tfn * idf * idf, rel=1e-12)


def test_tfidf_absent_term_scores_zero(tiny_index):
    assert score_tfidf(tiny_index, q(bear=1.0), "d3", 1.2, 0.75) == 0.0


def test_bm25_example(tiny_index):
    score = score_bm25(tiny_index, q(river=1.0), "d3", 1.2, 7.0, 0.75)
    assert score == pytest.approx(math.log(2.5 / 1.5) * 2.2 / 1.84, rel=1e-12)
    assert score == pytest.approx(0.610770, abs=1e-6)


def test_bm25_idf_floor():
    index = build_index([Document(docno=f"d{i}", text="bear") for i in range(3)], PLAIN)
    assert score_bm25(index, q(bear=1.0), "d0", 1.2, 7.0, 0.75) == 0.0


def test_lm_jm_example(tiny_index):
    score = score_lm_jm(tiny_index, q(bear=1.0), "d1", 0.5, 0.5)
    assert score == pytest.approx(math.log(0.5 * 2 / 3 + 0.5 * 0.6), rel=1e-12)
    assert score == pytest.approx(-0.45676, abs=1e-5)


def test_lm_jm_weights_are_renormalized(tiny_index):
    assert score_lm_jm(tiny_index, q(bear=1.0), "d1", 0.2, 0.2) == pytest.approx(
        score_lm_jm(tiny_index, q(bear=1.0), "d1", 0.5, 0.5), rel=1e-12
    )


def test_lm_jm_degenerate(tiny_index):
    with pytest.raises(DegenerateSmoothing):
        score_lm_jm(tiny_index, q(bear=1.0), "d1", 0.0, 0.0)


def test_lm_dir_example(tiny_index):
    assert score_lm_dir(tiny_index, q(bear=1.0), "d1", 10.0) == pytest.approx(math.log(8 / 13), rel=1e-12)
    assert score_lm_dir(tiny_index, q(bear=1.0), "d2", 10.0) == pytest.approx(math.log(7 / 11), rel=1e-12)


def test_lm_ts_example(tiny_index):
    score = score_lm_ts(tiny_index, q(bear=1.0), "d1", 10.0, 0.3)
    assert score == pytest.approx(math.log(0.7 * 8 / 13 + 0.3 * 0.6), rel=1e-12)
    assert score == pytest.approx(-0.49303, abs=1e-5)


def test_lm_ts_limits(tiny_index):
    query = q(bear=1.0, cub=2.0)
    for doc in ("d1", "d2", "d3"):
        assert score_lm_ts(tiny_index, query, doc, 10.0, 0.0) == pytest.approx(
            score_lm_dir(tiny_index, query, doc, 10.0), rel=1e-12
        )
        assert score_lm_ts(tiny_index, query, doc, 10.0, 1.0) == pytest.approx(
            math.log(0.6) + 2 * math.log(0.2), rel=1e-12
        )


def test_lm_dir_large_mu_tends_to_collection_model(tiny_index):
    query = q(bear=1.0, river=1.0)
    limit = math.log(0.6) + math.log(0.2)
    for doc in ("d1", "d2", "d3"):
        assert score_lm_dir(tiny_index, query, doc, 1e9) == pytest.approx(limit, abs=1e-6)


def test_lm_dir_monotone_in_tf():
    docs = [Document(docno=f"d{tf}", text=" ".join(["bear"] * tf + ["fish"] * (5 - tf))) for tf in range(6)]
    index = build_index(docs, PLAIN)
    scores = [score_lm_dir(index, q(bear=1.0), f"d{tf}", 100.0) for tf in range(6)]
    assert all(a < b for a, b in zip(scores, scores[1:]))


def test_unseen_term_is_floored(tiny_index):
    score = score_lm_dir(tiny_index, q(unicorn=1.0), "d1", 10.0)
    assert score == pytest.approx(math.log(EPSILON))
    assert math.isfinite(score)


def test_empty_document_handling():
    index = build_index([Document(docno="a", text="bear"), Document(docno="e", text="")], PLAIN)
    assert score_lm_jm(index, q(bear=1.0), "e", 0.5, 0.5) == pytest.approx(math.log(0.5), rel=1e-12)
    assert score_lm_dir(index, q(bear=1.0), "e", 10.0) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(DegenerateSmoothing):
        score_lm_dir(index, q(bear=1.0), "e", 0.0)
    with pytest.raises(DegenerateSmoothing):
        score_lm_ts(index, q(bear=1.0), "e", 0.0, 0.5)


def test_empty_index():
    index = build_index([], PLAIN)
    with pytest.raises(EmptyIndex):
        score_documents(index, q(bear=1.0), np.zeros(0, dtype=np.int64), RetrievalConfig())


def test_zero_weight_terms_are_ignored(tiny_index):
    assert score_lm_dir(tiny_index, q(bear=1.0, unicorn=0.0), "d1", 10.0) == pytest.approx(math.log(8 / 13))


# --- brute-force oracle ------------------------------------------------------

def _oracle(docs, query, doc_i, config):
    counts = [Counter(d.text.split()) for d in docs]
    lengths = [sum(c.values()) for c in counts]
    N, total = len(docs), sum(lengths)
    avdl = total / N
    tf_d, dl = counts[doc_i], lengths[doc_i]
    score = 0.0
    for term, w in query.terms.items():
        tf = tf_d.get(term, 0)
        df = sum(1 for c in counts if term in c)
        p_c = sum(c.get(term, 0) for c in counts) / total
        if config.model == RetrievalModel.TFIDF:
            k1, b = config.tfidf_k1, config.tfidf_b
            if tf:
                score += w * k1 * tf / (tf + k1 * (1 - b + b * dl / avdl)) * math.log((N + 1) / (df + 0.5)) ** 2
        elif config.model == RetrievalModel.BM25:
            k1, k3, b = config.bm25_k1, config.bm25_k3, config.bm25_b
            idf = max(math.log((N - df + 0.5) / (df + 0.5)), 0.0)
            if tf:
                score += idf * tf * (k1 + 1) / (tf + k1 * (1 - b + b * dl / avdl)) * w * (k3 + 1) / (k3 + w)
        elif config.model == RetrievalModel.LM_JM:
            a = config.lambda_doc / (config.lambda_doc + config.lambda_col)
            p = a * (tf / dl if dl else 0.0) + (1 - a) * p_c
            score += w * math.log(max(p, EPSILON))
        elif config.model == RetrievalModel.LM_DIR:
            mu = config.mu_dir
            score += w * math.log(max((tf + mu * p_c) / (dl + mu), EPSILON))
        else:
            mu, lam = config.mu_ts, config.lambda_ts
            p = (1 - lam) * (tf + mu * p_c) / (dl + mu) + lam * p_c
            score += w * math.log(max(p, EPSILON))
    return score


def _model_config(rng, model, edge_rate=0.0):
    """A tuning-space draw for `model`; model parameters sit on a range end with probability edge_rate."""
    point = sample_random(TUNING_SPACE, rng)
    while point["rm"] != model.value:
        point = sample_random(TUNING_SPACE, rng)
    values = dict(point.values)
    for dim in TUNING_SPACE.dimensions:
        if dim.active_when and dim.active_when[0] == "rm" and dim.is_active(values) and rng.random() < edge_rate:
            values[dim.name] = dim.low if rng.random() < 0.5 else dim.high
    return to_retrieval_config(ConfigPoint.from_values(values))[1]


def _random_case(rng, model):
    vocab = ORACLE_VOCAB[: int(rng.integers(3, len(ORACLE_VOCAB) + 1))]
    docs = [
        Document(docno=f"d{i}", text=" ".join(rng.choice(vocab, size=int(rng.integers(1, 16)))))
        for i in range(int(rng.integers(1, 21)))
    ]
    n_terms = int(rng.integers(1, 6))
    pool = vocab + ["unicorn"]
    terms = {str(t): float(rng.integers(1, 4)) for t in rng.choice(pool, size=min(n_terms, len(pool)), replace=False)}
    return docs, WeightedQuery(terms=terms), _model_config(rng, model, edge_rate=0.2)


@pytest.mark.parametrize("model", list(RetrievalModel))
def test_scores_match_oracle(model):
    rng = np.random.default_rng(1234)
    for _ in range(200):
        docs, query, config = _random_case(rng, model)
        index = build_index(docs, PLAIN)
        if model == RetrievalModel.LM_JM and config.lambda_doc + config.lambda_col == 0:
            with pytest.raises(DegenerateSmoothing):
                score_documents(index, query, np.arange(index.N), config)
            continue
        got = score_documents(index, query, np.arange(index.N), config)
        for i in range(index.N):
            assert got[i] == pytest.approx(_oracle(docs, query, i, config), rel=1e-10, abs=1e-10)


def _padded_index(texts):
    # Filler documents keep "bear" rare enough for a positive BM25 idf
    docs = [Document(docno=f"d{i}", text=text) for i, text in enumerate(texts)]
    docs += [Document(docno=f"f{i}", text="snow " * 10) for i in range(12)]
    return build_index(docs, PLAIN)


@pytest.mark.parametrize("model", [RetrievalModel.TFIDF, RetrievalModel.BM25])
def test_scores_grow_with_term_frequency(model):
    index = _padded_index([" ".join(["bear"] * tf + ["fish"] * (10 - tf)) for tf in range(1, 6)])
    rng = np.random.default_rng(7)
    for _ in range(20):
        config = _model_config(rng, model, edge_rate=0.3)
        scores = score_documents(index, q(bear=1.0), np.arange(5), config)
        assert all(a < b for a, b in zip(scores, scores[1:]))


@pytest.mark.parametrize("model, b_field", [(RetrievalModel.TFIDF, "tfidf_b"), (RetrievalModel.BM25, "bm25_b")])
def test_zero_length_normalization_ignores_document_length(model, b_field):
    index = _padded_index([" ".join(["bear"] * 2 + ["fish"] * pad) for pad in range(6)])
    rng = np.random.default_rng(11)
    for _ in range(10):
        config = _model_config(rng, model)
        flat = score_documents(index, q(bear=1.0), np.arange(6), config.model_copy(update={b_field: 0.0}))
        assert flat.tolist() == pytest.approx([flat[0]] * 6, rel=1e-12)
        assert flat[0] > 0
        normalized = score_documents(index, q(bear=1.0), np.arange(6), config.model_copy(update={b_field: 0.5}))
        assert all(a > b for a, b in zip(normalized, normalized[1:]))
