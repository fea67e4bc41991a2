"""Inverted index per (stopper, stemmer) variant, with on-disk persistence.

On-disk layout of one variant directory (format 1, plain text, deterministic):

    stats          key=value manifest (N, total_terms, avdl, ...)
    docs.tsv       docno<TAB>length, one line per document ordinal
    postings.txt   term<TAB>df<TAB>cf<TAB>ordinal:tf ordinal:tf ..., terms sorted
"""
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from irtune.indexing.text import apply_stemmer, apply_stopper, load_stoplist, tokenize
from irtune.utils import kv_format
from irtune.utils.errors import DuplicateDocno, EmptyCollection, InputReadError, ParseError
from irtune.utils.logging_utils import get_logger
from irtune.utils.models import Document, IndexVariant

logger = get_logger("Indexer")

FORMAT_VERSION = 1
Posting = Tuple[np.ndarray, np.ndarray]  # (ascending ordinals, term frequencies)


@dataclass(frozen=True)
class InvertedIndex:
    variant: IndexVariant
    docnos: Tuple[str, ...]
    doc_lengths: np.ndarray
    postings: Dict[str, Posting]
    cf: Dict[str, int]
    df: Dict[str, int]

    @property
    def N(self) -> int:
        return len(self.docnos)

    @cached_property
    def total_terms(self) -> int:
        return int(self.doc_lengths.sum())

    @property
    def avdl(self) -> float:
        return self.total_terms / self.N if self.N > 0 else 0.0

    @cached_property
    def ordinals(self) -> Dict[str, int]:
        return {docno: i for i, docno in enumerate(self.docnos)}

    @cached_property
    def term_vectors(self) -> List[Dict[str, int]]:
        """Forward index: ordinal -> {term: tf}."""
        vectors: List[Dict[str, int]] = [{} for _ in range(self.N)]
        for term in sorted(self.postings):
            ids, tfs = self.postings[term]
            for ordinal, tf in zip(ids.tolist(), tfs.tolist()):
                vectors[ordinal][term] = tf
        return vectors

    def tf_vector(self, term: str) -> np.ndarray:
        """Dense term frequencies over all documents (zeros for unseen terms)."""
        dense = np.zeros(self.N, dtype=np.float64)
        posting = self.postings.get(term)
        if posting is not None:
            dense[posting[0]] = posting[1]
        return dense

    def vocabulary(self) -> List[str]:
        return sorted(self.postings)


class _IndexBuilder:
    def __init__(self, variant: IndexVariant):
        self.variant = variant
        self.docnos: List[str] = []
        self.lengths: List[int] = []
        self.ids: Dict[str, List[int]] = {}
        self.tfs: Dict[str, List[int]] = {}

    def add(self, docno: str, tokens: Sequence[str]) -> None:
        ordinal = len(self.docnos)
        self.docnos.append(docno)
        self.lengths.append(len(tokens))
        for term, tf in Counter(tokens).items():
            self.ids.setdefault(term, []).append(ordinal)
            self.tfs.setdefault(term, []).append(tf)

    def finish(self) -> InvertedIndex:
        postings: Dict[str, Posting] = {}
        cf: Dict[str, int] = {}
        df: Dict[str, int] = {}
        for term in sorted(self.ids):
            ids = np.asarray(self.ids[term], dtype=np.int64)
            tfs = np.asarray(self.tfs[term], dtype=np.int64)
            postings[term] = (ids, tfs)
            cf[term] = int(tfs.sum())
            df[term] = int(ids.size)
        return InvertedIndex(
            variant=self.variant,
            docnos=tuple(self.docnos),
            doc_lengths=np.asarray(self.lengths, dtype=np.int64),
            postings=postings,
            cf=cf,
            df=df,
        )


def build_indexes(
    corpus: Iterable[Document],
    variants: Optional[Sequence[IndexVariant]] = None,
    stoplist: Optional[FrozenSet[str]] = None,
) -> Dict[IndexVariant, InvertedIndex]:
    """Build several variants in one pass over the corpus (tokenizing each document once)."""
    variants = list(variants) if variants is not None else IndexVariant.all()
    stoplist = stoplist if stoplist is not None else load_stoplist()
    builders = {variant: _IndexBuilder(variant) for variant in variants}
    seen = set()
    for count, doc in enumerate(corpus, start=1):
        if doc.docno in seen:
            raise DuplicateDocno(doc.docno)
        seen.add(doc.docno)
        tokens = tokenize(doc.text)
        stopped = apply_stopper(tokens, stoplist)
        for variant, builder in builders.items():
            base = stopped if variant.stopper else tokens
            builder.add(doc.docno, apply_stemmer(base) if variant.stemmer else base)
        if count % 10000 == 0:
            logger.info(f"Indexed {count} documents")
    return {variant: builder.finish() for variant, builder in builders.items()}


def build_index(
    corpus: Iterable[Document],
    variant: IndexVariant,
    stoplist: Optional[FrozenSet[str]] = None,
) -> InvertedIndex:
    return build_indexes(corpus, [variant], stoplist)[variant]


def collection_prob(index: InvertedIndex, term: str) -> float:
    """p(term | collection) = cf / total_terms."""
    if index.total_terms == 0:
        raise EmptyCollection("collection has no terms")
    return index.cf.get(term, 0) / index.total_terms


# --- persistence ----------------------------------------------------------

def save_index(index: InvertedIndex, directory: Union[str, Path]) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    kv_format.dump(
        {
            "format": FORMAT_VERSION,
            "stopper": index.variant.stopper,
            "stemmer": index.variant.stemmer,
            "N": index.N,
            "total_terms": index.total_terms,
            "avdl": float(index.avdl),
            "vocabulary": len(index.postings),
        },
        directory / "stats",
    )
    with open(directory / "docs.tsv", "w", encoding="utf-8", newline="\n") as f:
        for docno, length in zip(index.docnos, index.doc_lengths.tolist()):
            f.write(f"{docno}\t{length}\n")
    with open(directory / "postings.txt", "w", encoding="utf-8", newline="\n") as f:
        for term in sorted(index.postings):
            ids, tfs = index.postings[term]
            pairs = " ".join(f"{o}:{tf}" for o, tf in zip(ids.tolist(), tfs.tolist()))
            f.write(f"{term}\t{index.df[term]}\t{index.cf[term]}\t{pairs}\n")
    return directory


def load_index(directory: Union[str, Path]) -> InvertedIndex:
    directory = Path(directory)
    stats = kv_format.load(directory / "stats")
    if int(stats.get("format", -1)) != FORMAT_VERSION:
        raise InputReadError(f"{directory}: unsupported index format {stats.get('format')}")
    variant = IndexVariant(stopper=kv_format.parse_bool(stats["stopper"]), stemmer=kv_format.parse_bool(stats["stemmer"]))
    try:
        doc_lines = (directory / "docs.tsv").read_text(encoding="utf-8").splitlines()
        posting_lines = (directory / "postings.txt").read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise InputReadError(f"cannot read index {directory}: {e}") from e

    docnos: List[str] = []
    lengths: List[int] = []
    for line_no, line in enumerate(doc_lines, start=1):
        docno, _, length = line.partition("\t")
        if not length:
            raise ParseError(line_no, "expected docno<TAB>length", str(directory / "docs.tsv"))
        docnos.append(docno)
        lengths.append(int(length))

    postings: Dict[str, Posting] = {}
    cf: Dict[str, int] = {}
    df: Dict[str, int] = {}
    for line_no, line in enumerate(posting_lines, start=1):
        fields = line.split("\t")
        if len(fields) != 4:
            raise ParseError(line_no, "expected term<TAB>df<TAB>cf<TAB>postings", str(directory / "postings.txt"))
        term, term_df, term_cf, pairs = fields
        split = [pair.split(":") for pair in pairs.split()]
        postings[term] = (
            np.asarray([int(o) for o, _ in split], dtype=np.int64),
            np.asarray([int(tf) for _, tf in split], dtype=np.int64),
        )
        df[term] = int(term_df)
        cf[term] = int(term_cf)

    index = InvertedIndex(
        variant=variant,
        docnos=tuple(docnos),
        doc_lengths=np.asarray(lengths, dtype=np.int64),
        postings=postings,
        cf=cf,
        df=df,
    )
    if index.N != int(stats["N"]) or index.total_terms != int(stats["total_terms"]):
        raise InputReadError(f"{directory}: stats manifest does not match index contents")
    return index


def save_indexes(indexes: Dict[IndexVariant, InvertedIndex], out_dir: Union[str, Path]) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for variant in IndexVariant.all():
        if variant in indexes:
            save_index(indexes[variant], out_dir / variant.dirname)
            logger.info(f"Wrote variant {variant.dirname} ({indexes[variant].N} docs)")
    first = next(iter(indexes.values()))
    kv_format.dump(
        {
            "format": FORMAT_VERSION,
            "variants": [v.dirname for v in IndexVariant.all() if v in indexes],
            "N": first.N,
        },
        out_dir / "manifest",
    )
    return out_dir


def load_indexes(index_dir: Union[str, Path]) -> Dict[IndexVariant, InvertedIndex]:
    index_dir = Path(index_dir)
    manifest = kv_format.load(index_dir / "manifest")
    wanted = [name for name in manifest.get("variants", "").split(",") if name]
    indexes = {}
    for variant in IndexVariant.all():
        if variant.dirname in wanted:
            indexes[variant] = load_index(index_dir / variant.dirname)
    if not indexes:
        raise InputReadError(f"{index_dir}: manifest lists no index variants")
    return indexes
