# irtune/evaluation/__init__.py
from .fusion import zsum_fuse
from .measures import average_precision, evaluate_run, ndcg, precision_at_k
from .report import per_topic_delta, virtual_aggregate
from .trec_io import read_qrels, read_run, write_qrels, write_run

__all__ = [
    "zsum_fuse",
    "average_precision",
    "evaluate_run",
    "ndcg",
    "precision_at_k",
    "per_topic_delta",
    "virtual_aggregate",
    "read_qrels",
    "read_run",
    "write_qrels",
    "write_run",
]
