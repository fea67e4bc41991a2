"""Optimization history file: one TSV line per evaluation, flushed as written.

    iteration<TAB>point (comma-joined key=value)<TAB>y<TAB>incumbent y

Values are written with repr, so replaying a history reproduces the floats exactly.
"""
from pathlib import Path
from typing import List, Union

from irtune.bayesopt.state import Observation
from irtune.hyperspace.space import SpaceDef, encode, format_point_line, parse_point_line
from irtune.utils.errors import InputReadError, InvalidConfig, ParseError


def format_record(iteration: int, observation: Observation, incumbent: float, space: SpaceDef) -> str:
    return f"{iteration}\t{format_point_line(observation.point, space)}\t{observation.y!r}\t{float(incumbent)!r}\n"


class HistoryWriter:
    """Appends records to a history file, flushing after each one."""

    def __init__(self, path: Union[str, Path], space: SpaceDef, append: bool = False):
        self.path = Path(path)
        self.space = space
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._file = open(self.path, "a" if append else "w", encoding="utf-8", newline="\n")

    def write(self, iteration: int, observation: Observation, incumbent: float) -> None:
        self._file.write(format_record(iteration, observation, incumbent, self.space))
        self._file.flush()

    def close(self) -> None:
        self._file.close()

    def __enter__(self) -> "HistoryWriter":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def read_history(path: Union[str, Path], space: SpaceDef) -> List[Observation]:
    """Replay a history file into observations, checking iterations run 1, 2, 3, ..."""
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise InputReadError(f"cannot read history {path}: {e}") from e
    observations: List[Observation] = []
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise ParseError(line_no, f"expected 4 tab-separated fields, got {len(fields)}", str(path))
        try:
            iteration = int(fields[0])
            point = parse_point_line(fields[1], space)
            y = float(fields[2])
        except (ValueError, InvalidConfig) as e:
            raise ParseError(line_no, str(e), str(path)) from e
        if iteration != len(observations) + 1:
            raise ParseError(line_no, f"expected iteration {len(observations) + 1}, got {iteration}", str(path))
        observations.append(Observation(x=encode(space, point), point=point, y=y))
    return observations

