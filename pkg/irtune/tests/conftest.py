# irtune/tests/conftest.py
import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "../..")))

from irtune.indexing.inverted_index import build_index, build_indexes  # noqa: E402
from irtune.utils.models import Document, IndexVariant  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"

PLAIN = IndexVariant(stopper=False, stemmer=False)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def tiny_docs():
    """The three-document collection used by the hand-computed examples."""
    return [
        Document(docno="d1", text="bear bear cub"),
        Document(docno="d2", text="bear"),
        Document(docno="d3", text="river"),
    ]


@pytest.fixture
def tiny_index(tiny_docs):
    return build_index(tiny_docs, PLAIN)


@pytest.fixture(scope="session")
def fixture_indexes():
    from irtune.indexing.corpus import read_corpus

    return build_indexes(read_corpus(FIXTURES / "corpus.trec"))
