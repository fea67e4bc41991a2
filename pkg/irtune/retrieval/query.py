import re
from collections import Counter
from pathlib import Path
from typing import Dict, FrozenSet, Optional, Sequence, Union

from irtune.indexing.text import preprocess
from irtune.utils.errors import EmptyQuery, InputReadError, ParseError
from irtune.utils.models import IndexVariant, WeightedQuery, topic_sort_key

TOPIC_FIELDS = ("title", "desc", "narr")
TOP_RE = re.compile(r"<top>(.*?)</top>", re.IGNORECASE | re.DOTALL)
FIELD_RE = re.compile(r"<(num|title|desc|narr)>([^<]*)", re.IGNORECASE)
FIELD_LABELS = re.compile(r"^\s*(number|topic|description|narrative)\s*:", re.IGNORECASE)


def parse_query(text: str, variant: IndexVariant, stoplist: Optional[FrozenSet[str]] = None) -> WeightedQuery:
    """Preprocess query text with the index's pipeline; weights are query term frequencies."""
    tokens = preprocess(text, variant, stoplist)
    if not tokens:
        raise EmptyQuery(f"no query term survives preprocessing: {text!r}")
    return WeightedQuery(terms={term: float(qtf) for term, qtf in Counter(tokens).items()})


def parse_trec_topics(text: str, fields: Sequence[str] = ("title",), source: str = "<topics>") -> Dict[str, str]:
    """Parse `<top>` blocks. Field tags are unclosed; a field runs until the next tag."""
    topics: Dict[str, str] = {}
    for match in TOP_RE.finditer(text):
        line = text.count("\n", 0, match.start()) + 1
        values = {
            name.lower(): " ".join(FIELD_LABELS.sub("", body).split())
            for name, body in FIELD_RE.findall(match.group(1))
        }
        topic_id = values.get("num", "").split()[-1:]
        if not topic_id:
            raise ParseError(line, "<top> without <num>", source)
        topics[topic_id[0]] = " ".join(values[f] for f in fields if values.get(f))
    return topics


def parse_tsv_topics(text: str, source: str = "<topics>") -> Dict[str, str]:
    topics: Dict[str, str] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        topic_id, sep, query = line.partition("\t")
        if not sep or not topic_id.strip():
            raise ParseError(line_no, "expected topic_id<TAB>query", source)
        topics[topic_id.strip()] = query.strip()
    return topics


def read_topics(path: Union[str, Path], fields: Sequence[str] = ("title",)) -> Dict[str, str]:
    """Topic id -> query text, ordered by topic id. TREC `<top>` files or TSV."""
    unknown = [f for f in fields if f not in TOPIC_FIELDS]
    if unknown:
        raise ParseError(0, f"unknown topic fields {unknown}", str(path))
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8", errors="replace")
    except OSError as e:
        raise InputReadError(f"cannot read topics {path}: {e}") from e
    if "<top>" in text.lower():
        topics = parse_trec_topics(text, fields, str(path))
    else:
        topics = parse_tsv_topics(text, str(path))
    return {t: topics[t] for t in sorted(topics, key=topic_sort_key)}
