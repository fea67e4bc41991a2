"""Corpus readers: TREC SGML (`<DOC><DOCNO>..</DOCNO>..</DOC>`) and JSON lines."""
import re
from pathlib import Path
from typing import Iterator, Union

from bs4 import BeautifulSoup
from pydantic import ValidationError

from irtune.utils.errors import InputReadError, ParseError
from irtune.utils.logging_utils import get_logger
from irtune.utils.models import Document

logger = get_logger("Corpus")

DOC_RE = re.compile(r"<DOC>(.*?)</DOC>", re.IGNORECASE | re.DOTALL)
JSONL_SUFFIXES = {".jsonl", ".ndjson", ".json"}


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8", errors="replace")
    except OSError as e:
        raise InputReadError(f"cannot read corpus {path}: {e}") from e


def parse_trec_sgml(text: str, source: str = "<corpus>") -> Iterator[Document]:
    for match in DOC_RE.finditer(text):
        line = text.count("\n", 0, match.start()) + 1
        soup = BeautifulSoup(match.group(1), "html.parser")
        docno_tag = soup.find("docno")
        if docno_tag is None or not docno_tag.get_text(strip=True):
            raise ParseError(line, "<DOC> without <DOCNO>", source)
        docno = docno_tag.get_text(strip=True)
        docno_tag.decompose()
        yield Document(docno=docno, text=soup.get_text(" "))


def parse_jsonl(text: str, source: str = "<corpus>") -> Iterator[Document]:
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            yield Document.model_validate_json(line)
        except ValidationError as e:
            reason = "; ".join(err["msg"] for err in e.errors())
            raise ParseError(line_no, f"bad document record: {reason}", source) from e


def read_corpus(path: Union[str, Path]) -> Iterator[Document]:
    """Yield documents from a TREC SGML or JSON-lines file, format detected from content."""
    path = Path(path)
    text = _read_text(path)
    head = text.lstrip()[:1]
    if path.suffix.lower() in JSONL_SUFFIXES or head == "{":
        logger.info(f"Reading JSON-lines corpus {path}")
        yield from parse_jsonl(text, str(path))
    else:
        logger.info(f"Reading TREC SGML corpus {path}")
        yield from parse_trec_sgml(text, str(path))
