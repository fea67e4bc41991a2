"""Flat `key=value` text, one pair per line.

Used for configuration points, index manifests and settings files. Blank lines
and lines starting with `#` are ignored when reading.
"""
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from .errors import InputReadError, ParseError

TRUE_WORDS = {"true", "1", "yes", "on"}
FALSE_WORDS = {"false", "0", "no", "off"}


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ",".join(format_value(v) for v in value)
    return str(value)


def parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in TRUE_WORDS:
        return True
    if lowered in FALSE_WORDS:
        return False
    raise ValueError(f"not a boolean: {text!r}")


def loads(text: str, source: Optional[str] = None) -> Dict[str, str]:
    pairs: Dict[str, str] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ParseError(number, f"expected key=value, got {raw!r}", source)
        if key in pairs:
            raise ParseError(number, f"duplicate key {key!r}", source)
        pairs[key] = value.strip()
    return pairs


def dumps(pairs: Mapping[str, Any]) -> str:
    return "".join(f"{key}={format_value(value)}\n" for key, value in pairs.items())


def load(path: Union[str, Path]) -> Dict[str, str]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputReadError(f"cannot read {path}: {e}") from e
    return loads(text, source=str(path))


def dump(pairs: Mapping[str, Any], path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(pairs), encoding="utf-8")
