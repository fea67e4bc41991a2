# irtune/retrieval/__init__.py
from .feedback import prf_expand
from .query import parse_query, read_topics
from .ranker import rank
from .scoring import score_bm25, score_documents, score_lm_dir, score_lm_jm, score_lm_ts, score_tfidf

__all__ = [
    "prf_expand",
    "parse_query",
    "read_topics",
    "rank",
    "score_bm25",
    "score_documents",
    "score_lm_dir",
    "score_lm_jm",
    "score_lm_ts",
    "score_tfidf",
]
