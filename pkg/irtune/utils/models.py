from enum import Enum
from typing import Dict, Iterable, List, Optional, Set, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


def topic_sort_key(topic: str) -> Tuple[int, int, str]:
    """Numeric topic ids sort numerically, anything else lexicographically after them."""
    if topic.isdigit():
        return (0, int(topic), topic)
    return (1, 0, topic)


class RetrievalModel(str, Enum):
    TFIDF = "TFIDF"
    BM25 = "BM25"
    LM_JM = "LM_JM"
    LM_DIR = "LM_DIR"
    LM_TS = "LM_TS"


class Measure(str, Enum):
    """Measure names as printed by the standard TREC evaluation tool."""
    MAP = "map"
    NDCG = "ndcg"
    P10 = "P_10"


class Document(BaseModel):
    docno: str = Field(min_length=1)
    text: str = ""

    @field_validator("docno")
    @classmethod
    def _strip_docno(cls, value: str) -> str:
        value = value.strip()
        if not value:
            raise ValueError("docno must be non-empty")
        if any(ch.isspace() for ch in value):
            raise ValueError("docno must not contain whitespace")
        return value


class IndexVariant(BaseModel):
    model_config = ConfigDict(frozen=True)

    stopper: bool
    stemmer: bool

    @property
    def dirname(self) -> str:
        return f"stop{int(self.stopper)}_stem{int(self.stemmer)}"

    @classmethod
    def all(cls) -> List["IndexVariant"]:
        return [cls(stopper=stop, stemmer=stem) for stop in (False, True) for stem in (False, True)]


class RetrievalConfig(BaseModel):
    """Parameters of one retrieval run. Only the fields gated by `model` and `prf` are read."""
    model_config = ConfigDict(frozen=True)

    model: RetrievalModel = RetrievalModel.LM_DIR
    tfidf_k1: float = Field(default=1.2, gt=0)
    tfidf_b: float = Field(default=0.75, ge=0, le=1)
    bm25_k1: float = Field(default=1.2, gt=0)
    bm25_k3: float = Field(default=7.0, ge=0)
    bm25_b: float = Field(default=0.75, ge=0, le=1)
    lambda_doc: float = Field(default=0.5, ge=0, le=1)
    lambda_col: float = Field(default=0.5, ge=0, le=1)
    mu_dir: float = Field(default=1000.0, ge=0)
    mu_ts: float = Field(default=1000.0, ge=0)
    lambda_ts: float = Field(default=0.5, ge=0, le=1)
    prf: bool = False
    fbDocs: int = Field(default=10, ge=1)
    fbTerms: int = Field(default=10, ge=1)
    fbMu: float = Field(default=0.0, ge=0)
    fbOrigWeight: float = Field(default=0.5, ge=0, le=1)


class WeightedQuery(BaseModel):
    """Preprocessed query terms with non-negative weights (qtf for raw queries)."""
    model_config = ConfigDict(frozen=True)

    terms: Dict[str, float]

    @field_validator("terms")
    @classmethod
    def _check_weights(cls, terms: Dict[str, float]) -> Dict[str, float]:
        if any(w < 0 for w in terms.values()):
            raise ValueError("query weights must be >= 0")
        if not any(w > 0 for w in terms.values()):
            raise ValueError("query needs at least one positive weight")
        return terms

    @property
    def length(self) -> float:
        return float(sum(self.terms.values()))

    def normalized(self) -> "WeightedQuery":
        total = self.length
        return WeightedQuery(terms={t: w / total for t, w in self.terms.items()})


class Ranking(BaseModel):
    """Scored documents for one topic, sorted by (score desc, docno asc)."""
    model_config = ConfigDict(frozen=True)

    topic: str
    entries: List[Tuple[str, float]] = Field(default_factory=list)
    depth: int = Field(default=1000, ge=1)

    @model_validator(mode="after")
    def _check_order(self) -> "Ranking":
        if len(self.entries) > self.depth:
            raise ValueError(f"ranking for topic {self.topic} longer than depth {self.depth}")
        seen: Set[str] = set()
        previous: Optional[Tuple[str, float]] = None
        for docno, score in self.entries:
            if docno in seen:
                raise ValueError(f"duplicate docno {docno} in topic {self.topic}")
            seen.add(docno)
            if previous is not None:
                p_doc, p_score = previous
                if score > p_score or (score == p_score and docno < p_doc):
                    raise ValueError(f"ranking for topic {self.topic} not sorted at {docno}")
            previous = (docno, score)
        return self

    @classmethod
    def from_scores(cls, topic: str, scored: Iterable[Tuple[str, float]], depth: int = 1000) -> "Ranking":
        ordered = sorted(scored, key=lambda item: (-item[1], item[0]))
        return cls(topic=topic, entries=ordered[:depth], depth=depth)

    @property
    def docnos(self) -> List[str]:
        return [docno for docno, _ in self.entries]

    @property
    def scores(self) -> List[float]:
        return [score for _, score in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


class RunFile(BaseModel):
    tag: str = Field(min_length=1, pattern=r"^\S+$")
    rankings: Dict[str, Ranking] = Field(default_factory=dict)

    def topics(self) -> List[str]:
        return sorted(self.rankings, key=topic_sort_key)


class Qrels(BaseModel):
    """Relevance grades keyed by topic, then docno. Relevant iff grade > 0."""
    judgments: Dict[str, Dict[str, int]] = Field(default_factory=dict)

    @property
    def topics(self) -> Set[str]:
        return set(self.judgments)

    def grade(self, topic: str, docno: str) -> int:
        return self.judgments.get(topic, {}).get(docno, 0)

    def relevant(self, topic: str) -> Set[str]:
        return {d for d, g in self.judgments.get(topic, {}).items() if g > 0}

    def evaluable_topics(self) -> List[str]:
        return sorted((t for t in self.judgments if self.relevant(t)), key=topic_sort_key)


class Measures(BaseModel):
    ap: float = Field(ge=0, le=1)
    ndcg: float = Field(ge=0, le=1)
    p10: float = Field(ge=0, le=1)

    def value(self, measure: Measure) -> float:
        return {Measure.MAP: self.ap, Measure.NDCG: self.ndcg, Measure.P10: self.p10}[Measure(measure)]


class MeasureReport(BaseModel):
    """Per-topic measures plus their means (MAP, mean NDCG, mean P@10)."""
    per_topic: Dict[str, Measures]
    means: Measures
