# irtune/tests/test_query.py
import pytest

from irtune.retrieval.query import parse_query, parse_trec_topics, parse_tsv_topics, read_topics
from irtune.utils.errors import EmptyQuery, InputReadError, ParseError
from irtune.utils.models import IndexVariant

PLAIN = IndexVariant(stopper=False, stemmer=False)
FULL = IndexVariant(stopper=True, stemmer=True)


def test_parse_query_counts_repeated_terms():
    query = parse_query("Bear bear cub", PLAIN)
    assert query.terms == {"bear": 2.0, "cub": 1.0}
    assert query.length == 3.0


def test_parse_query_uses_index_pipeline():
    assert parse_query("the black bears", FULL).terms == {"black": 1.0, "bear": 1.0}
    assert parse_query("the black bears", PLAIN).terms == {"the": 1.0, "black": 1.0, "bears": 1.0}


@pytest.mark.parametrize("text", ["", "   ", "the of and"])
def test_parse_query_empty(text):
    with pytest.raises(EmptyQuery):
        parse_query(text, FULL)


def test_normalized_query():
    query = parse_query("bear bear cub", PLAIN).normalized()
    assert query.terms["bear"] == pytest.approx(2 / 3)
    assert query.length == pytest.approx(1.0)


def test_read_trec_topics(fixtures_dir):
    topics = read_topics(fixtures_dir / "topics.trec")
    assert list(topics) == ["301", "302", "303", "304", "305"]
    assert topics["301"] == "black bear attacks"


def test_trec_topic_fields(fixtures_dir):
    topics = read_topics(fixtures_dir / "topics.trec", fields=("title", "desc"))
    assert topics["301"] == "black bear attacks Reports of black bears attacking people."


def test_trec_and_tsv_titles_agree(fixtures_dir):
    assert read_topics(fixtures_dir / "topics.trec") == read_topics(fixtures_dir / "topics.tsv")


def test_topics_sorted_numerically(tmp_path):
    path = tmp_path / "topics.tsv"
    path.write_text("10\tten\n9\tnine\nabc\tletters\n", encoding="utf-8")
    assert list(read_topics(path)) == ["9", "10", "abc"]


def test_trec_topic_without_num():
    with pytest.raises(ParseError):
        parse_trec_topics("<top>\n<title> lost\n</top>")


def test_tsv_topic_without_tab():
    with pytest.raises(ParseError) as excinfo:
        parse_tsv_topics("301\tok\n302 missing tab\n", "q.tsv")
    assert excinfo.value.line == 2


def test_unknown_field(fixtures_dir):
    with pytest.raises(ParseError):
        read_topics(fixtures_dir / "topics.trec", fields=("summary",))


def test_missing_topics_file(tmp_path):
    with pytest.raises(InputReadError):
        read_topics(tmp_path / "none.tsv")
