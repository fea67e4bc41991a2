"""TREC run and qrels files.

Run lines are `topic Q0 docno rank score tag`; qrels lines are
`topic iteration docno grade`. Writing is canonical: topics by id, entries by
(score desc, docno asc), ranks recomputed from order, scores with 6
significant digits.
"""
from pathlib import Path
from typing import Dict, List, Tuple, Union

from pydantic import ValidationError

from irtune.utils.errors import EmptyRun, InputReadError, MonotonicityError, ParseError
from irtune.utils.models import Qrels, Ranking, RunFile

DEFAULT_DEPTH = 1000


def _read(path: Union[str, Path], what: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputReadError(f"cannot read {what} {path}: {e}") from e


def parse_run(text: str, source: str = "<run>") -> RunFile:
    rows: Dict[str, List[Tuple[int, int, str, float]]] = {}
    tag = None
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        fields = line.split()
        if len(fields) != 6:
            raise ParseError(line_no, f"expected 6 fields, got {len(fields)}", source)
        topic, _, docno, rank, score, line_tag = fields
        try:
            rank_value, score_value = int(rank), float(score)
        except ValueError:
            raise ParseError(line_no, "rank must be an integer and score a number", source) from None
        tag = tag or line_tag
        rows.setdefault(topic, []).append((rank_value, line_no, docno, score_value))
    if tag is None:
        raise EmptyRun(f"{source}: run file has no entries")

    rankings: Dict[str, Ranking] = {}
    for topic, entries in rows.items():
        entries.sort()
        seen = set()
        for (_, line_no, docno, score), previous in zip(entries, [None] + entries[:-1]):
            if docno in seen:
                raise ParseError(line_no, f"duplicate docno {docno} for topic {topic}", source)
            seen.add(docno)
            if previous is not None and score > previous[3]:
                raise MonotonicityError(line_no, f"score increases with rank at {docno}", source)
        rankings[topic] = Ranking.from_scores(
            topic, [(docno, score) for _, _, docno, score in entries], max(DEFAULT_DEPTH, len(entries))
        )
    try:
        return RunFile(tag=tag, rankings=rankings)
    except ValidationError as e:
        raise ParseError(0, f"bad run tag {tag!r}", source) from e


def format_run(run: RunFile) -> str:
    lines = []
    for topic in run.topics():
        for rank, (docno, score) in enumerate(run.rankings[topic].entries, start=1):
            lines.append(f"{topic} Q0 {docno} {rank} {score:.6g} {run.tag}\n")
    return "".join(lines)


def read_run(path: Union[str, Path]) -> RunFile:
    return parse_run(_read(path, "run"), str(path))


def write_run(run: RunFile, path: Union[str, Path]) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(format_run(run))
    return path


def parse_qrels(text: str, source: str = "<qrels>") -> Qrels:
    judgments: Dict[str, Dict[str, int]] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        fields = line.split()
        if len(fields) != 4:
            raise ParseError(line_no, f"expected 4 fields, got {len(fields)}", source)
        topic, _, docno, grade = fields
        try:
            grade_value = int(grade)
        except ValueError:
            raise ParseError(line_no, f"relevance grade {grade!r} is not an integer", source) from None
        topic_judgments = judgments.setdefault(topic, {})
        if docno in topic_judgments:
            raise ParseError(line_no, f"duplicate judgment for ({topic}, {docno})", source)
        topic_judgments[docno] = grade_value
    return Qrels(judgments=judgments)


def format_qrels(qrels: Qrels) -> str:
    return "".join(
        f"{topic} 0 {docno} {grade}\n"
        for topic, graded in qrels.judgments.items()
        for docno, grade in graded.items()
    )


def read_qrels(path: Union[str, Path]) -> Qrels:
    return parse_qrels(_read(path, "qrels"), str(path))


def write_qrels(qrels: Qrels, path: Union[str, Path]) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(format_qrels(qrels))
    return path
