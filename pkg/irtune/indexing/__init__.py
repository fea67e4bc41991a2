# irtune/indexing/__init__.py
from .corpus import read_corpus
from .inverted_index import InvertedIndex, build_index, build_indexes, collection_prob, load_indexes, save_indexes
from .text import apply_stemmer, apply_stopper, load_stoplist, preprocess, tokenize

__all__ = [
    "read_corpus",
    "InvertedIndex",
    "build_index",
    "build_indexes",
    "collection_prob",
    "load_indexes",
    "save_indexes",
    "apply_stemmer",
    "apply_stopper",
    "load_stoplist",
    "preprocess",
    "tokenize",
]
