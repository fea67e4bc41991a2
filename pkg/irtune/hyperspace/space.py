"""The conditional hyperparameter space searched by the optimizer.

Eighteen dimensions: the two index switches, the retrieval model, the
parameters of each model (active only under that model), and the feedback
switch with its four parameters (active only when feedback is on). Points
are encoded into [0,1]^22 for the surrogate: booleans as 0/1, the model as a
one-hot block, numerics min-max scaled, inactive numerics at 0.5.
"""
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict

from irtune.utils import kv_format
from irtune.utils.errors import InvalidConfig, InvalidPoint
from irtune.utils.models import IndexVariant, RetrievalConfig, RetrievalModel

INACTIVE_SLOT = 0.5


class DimensionKind(str, Enum):
    BOOLEAN = "boolean"
    CATEGORICAL = "categorical"
    INTEGER = "integer"
    REAL = "real"


class Dimension(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    kind: DimensionKind
    low: float = 0.0
    high: float = 1.0
    choices: Tuple[str, ...] = ()
    # (gating dimension, value rendered as text); None means always active
    active_when: Optional[Tuple[str, str]] = None

    @property
    def is_numeric(self) -> bool:
        return self.kind in (DimensionKind.INTEGER, DimensionKind.REAL)

    @property
    def width(self) -> int:
        return len(self.choices) if self.kind == DimensionKind.CATEGORICAL else 1

    @property
    def midpoint(self) -> Any:
        if self.kind == DimensionKind.INTEGER:
            return (int(self.low) + int(self.high)) // 2
        if self.kind == DimensionKind.REAL:
            return (self.low + self.high) / 2
        if self.kind == DimensionKind.BOOLEAN:
            return False
        return self.choices[0]

    def is_active(self, values: Mapping[str, Any]) -> bool:
        if self.active_when is None:
            return True
        gate, wanted = self.active_when
        return kv_format.format_value(values.get(gate)) == wanted

    def range_text(self) -> str:
        if self.kind == DimensionKind.CATEGORICAL:
            return "{" + ",".join(self.choices) + "}"
        if self.kind == DimensionKind.BOOLEAN:
            return "{false,true}"
        return f"[{self.low:g},{self.high:g}]"

    def check(self, value: Any) -> Optional[str]:
        """Violation message for `value`, or None."""
        if self.kind == DimensionKind.BOOLEAN:
            return None if isinstance(value, bool) else f"{self.name} must be true or false"
        if self.kind == DimensionKind.CATEGORICAL:
            text = value.value if isinstance(value, Enum) else value
            return None if text in self.choices else f"{self.name} must be one of {','.join(self.choices)}"
        if isinstance(value, bool) or not isinstance(value, (int, float, np.integer, np.floating)):
            return f"{self.name} must be a number"
        if self.kind == DimensionKind.INTEGER and float(value) != int(value):
            return f"{self.name} must be an integer"
        if not np.isfinite(value) or not self.low <= value <= self.high:
            return f"{self.name} out of {self.range_text()}"
        return None

    def parse(self, raw: str) -> Any:
        raw = raw.strip()
        if self.kind == DimensionKind.BOOLEAN:
            return kv_format.parse_bool(raw)
        if self.kind == DimensionKind.CATEGORICAL:
            return raw
        if self.kind == DimensionKind.INTEGER:
            return int(raw)
        return float(raw)

    def scale(self, value: Any) -> float:
        if self.high == self.low:
            return INACTIVE_SLOT
        return (float(value) - self.low) / (self.high - self.low)


class SpaceDef(BaseModel):
    model_config = ConfigDict(frozen=True)

    dimensions: Tuple[Dimension, ...]

    @property
    def names(self) -> List[str]:
        return [d.name for d in self.dimensions]

    @property
    def encoded_size(self) -> int:
        return sum(d.width for d in self.dimensions)

    def dimension(self, name: str) -> Dimension:
        for dim in self.dimensions:
            if dim.name == name:
                return dim
        raise KeyError(name)

    def active(self, values: Mapping[str, Any]) -> Dict[str, bool]:
        return {d.name: d.is_active(values) for d in self.dimensions}

    def with_ranges(self, overrides: Mapping[str, Tuple[float, float]]) -> "SpaceDef":
        """Copy with numeric ranges replaced; dimensions cannot be added."""
        unknown = [name for name in overrides if name not in self.names]
        if unknown:
            raise InvalidConfig([f"unknown space dimension {name}" for name in unknown])
        dims = []
        for dim in self.dimensions:
            if dim.name in overrides:
                if not dim.is_numeric:
                    raise InvalidConfig(f"dimension {dim.name} has no numeric range")
                low, high = overrides[dim.name]
                if dim.kind == DimensionKind.INTEGER:
                    low, high = int(low), int(high)
                dim = dim.model_copy(update={"low": float(low), "high": float(high)})
            dims.append(dim)
        return SpaceDef(dimensions=tuple(dims))


def _real(name: str, low: float, high: float, gate: Tuple[str, str]) -> Dimension:
    return Dimension(name=name, kind=DimensionKind.REAL, low=low, high=high, active_when=gate)


def tuning_space(overrides: Optional[Mapping[str, Tuple[float, float]]] = None) -> SpaceDef:
    """The fixed 18-dimension tuning space, optionally with overridden ranges."""
    tfidf, bm25 = ("rm", "TFIDF"), ("rm", "BM25")
    fb = ("prf", "true")
    space = SpaceDef(dimensions=(
        Dimension(name="stopper", kind=DimensionKind.BOOLEAN),
        Dimension(name="stemmer", kind=DimensionKind.BOOLEAN),
        Dimension(name="rm", kind=DimensionKind.CATEGORICAL, choices=tuple(m.value for m in RetrievalModel)),
        _real("tfidf_k1", 1, 2, tfidf),
        _real("tfidf_b", 0, 1, tfidf),
        _real("bm25_k1", 1, 10, bm25),
        _real("bm25_k3", 1, 10, bm25),
        _real("bm25_b", 0, 1, bm25),
        _real("lambda_doc", 0, 1, ("rm", "LM_JM")),
        _real("lambda_col", 0, 1, ("rm", "LM_JM")),
        _real("mu_dir", 0, 3000, ("rm", "LM_DIR")),
        _real("mu_ts", 0, 3000, ("rm", "LM_TS")),
        _real("lambda_ts", 0, 1, ("rm", "LM_TS")),
        Dimension(name="prf", kind=DimensionKind.BOOLEAN),
        Dimension(name="fbDocs", kind=DimensionKind.INTEGER, low=1, high=50, active_when=fb),
        Dimension(name="fbTerms", kind=DimensionKind.INTEGER, low=1, high=50, active_when=fb),
        _real("fbMu", 0, 3000, fb),
        _real("fbOrigWeight", 0, 1, fb),
    ))
    return space.with_ranges(overrides) if overrides else space


TUNING_SPACE = tuning_space()


class ConfigPoint(BaseModel):
    """One configuration: a value for every dimension, inactive ones included."""
    model_config = ConfigDict(frozen=True)

    values: Dict[str, Any]

    @property
    def active(self) -> Dict[str, bool]:
        return TUNING_SPACE.active(self.values)

    def __getitem__(self, name: str) -> Any:
        return self.values[name]

    @classmethod
    def from_values(cls, values: Mapping[str, Any], space: SpaceDef = TUNING_SPACE) -> "ConfigPoint":
        """Fill dimensions that are missing and inactive with their midpoints, then validate."""
        filled = {}
        for dim in space.dimensions:
            if dim.name in values:
                value = values[dim.name]
                filled[dim.name] = value.value if isinstance(value, Enum) else value
            elif not dim.is_active(values):
                filled[dim.name] = dim.midpoint
        point = cls(values=filled)
        violations = validate(point, space)
        if violations:
            raise InvalidPoint(violations)
        return point


def validate(point: ConfigPoint, space: SpaceDef = TUNING_SPACE) -> List[str]:
    """Every violation found on the active dimensions; an empty list means valid."""
    violations = [f"unknown dimension {name}" for name in point.values if name not in space.names]
    for dim in space.dimensions:
        if not dim.is_active(point.values):
            continue
        if dim.name not in point.values:
            violations.append(f"{dim.name} missing")
            continue
        problem = dim.check(point.values[dim.name])
        if problem:
            violations.append(problem)
    return violations


def sample_random(space: SpaceDef, rng: np.random.Generator) -> ConfigPoint:
    """Switches and the model first, then uniform draws on the active ranges; midpoints elsewhere."""
    values: Dict[str, Any] = {}
    for dim in space.dimensions:
        if dim.kind == DimensionKind.BOOLEAN:
            values[dim.name] = bool(rng.integers(2))
        elif dim.kind == DimensionKind.CATEGORICAL:
            values[dim.name] = dim.choices[int(rng.integers(len(dim.choices)))]
    for dim in space.dimensions:
        if not dim.is_numeric:
            continue
        if not dim.is_active(values):
            values[dim.name] = dim.midpoint
        elif dim.kind == DimensionKind.INTEGER:
            values[dim.name] = int(rng.integers(int(dim.low), int(dim.high) + 1))
        else:
            values[dim.name] = float(rng.uniform(dim.low, dim.high))
    return ConfigPoint(values={name: values[name] for name in space.names})


def encode(space: SpaceDef, point: ConfigPoint, check: bool = True) -> np.ndarray:
    if check:
        violations = validate(point, space)
        if violations:
            raise InvalidPoint(violations)
    slots: List[float] = []
    for dim in space.dimensions:
        value = point.values.get(dim.name)
        if dim.kind == DimensionKind.BOOLEAN:
            slots.append(1.0 if value else 0.0)
        elif dim.kind == DimensionKind.CATEGORICAL:
            slots.extend(1.0 if choice == value else 0.0 for choice in dim.choices)
        elif dim.is_active(point.values):
            slots.append(dim.scale(value))
        else:
            slots.append(INACTIVE_SLOT)
    return np.asarray(slots, dtype=np.float64)


def encode_batch(space: SpaceDef, points: Sequence[ConfigPoint], check: bool = True) -> np.ndarray:
    if not points:
        return np.zeros((0, space.encoded_size), dtype=np.float64)
    return np.vstack([encode(space, p, check) for p in points])


def to_retrieval_config(point: ConfigPoint) -> Tuple[IndexVariant, RetrievalConfig]:
    """Materialize the index variant and the retrieval parameters of a point.

    Inactive dimensions are not read; their RetrievalConfig fields keep defaults.
    """
    values = point.values
    variant = IndexVariant(stopper=values["stopper"], stemmer=values["stemmer"])
    params = {
        dim.name: values[dim.name]
        for dim in TUNING_SPACE.dimensions
        if dim.is_numeric and dim.name in values and dim.is_active(values)
    }
    for name in ("fbDocs", "fbTerms"):
        if name in params:
            params[name] = int(round(params[name]))
    return variant, RetrievalConfig(model=RetrievalModel(values["rm"]), prf=bool(values["prf"]), **params)


# --- serialization --------------------------------------------------------

def parse_point(pairs: Mapping[str, str], space: SpaceDef = TUNING_SPACE) -> ConfigPoint:
    """Build a point from text values, reporting every malformed value at once."""
    values: Dict[str, Any] = {}
    violations = [f"unknown dimension {name}" for name in pairs if name not in space.names]
    for dim in space.dimensions:
        if dim.name not in pairs:
            continue
        try:
            values[dim.name] = dim.parse(pairs[dim.name])
        except ValueError:
            violations.append(f"{dim.name}: cannot parse {pairs[dim.name]!r} as {dim.kind.value}")
    if violations:
        raise InvalidPoint(violations)
    return ConfigPoint.from_values(values, space)


def point_pairs(point: ConfigPoint, space: SpaceDef = TUNING_SPACE) -> Dict[str, Any]:
    return {name: point.values[name] for name in space.names}


def format_point_line(point: ConfigPoint, space: SpaceDef = TUNING_SPACE) -> str:
    """Comma-joined key=value form used in history files."""
    return ",".join(f"{k}={kv_format.format_value(v)}" for k, v in point_pairs(point, space).items())


def parse_point_line(line: str, space: SpaceDef = TUNING_SPACE) -> ConfigPoint:
    pairs = {}
    for item in line.split(","):
        key, sep, value = item.partition("=")
        if not sep:
            raise InvalidPoint(f"malformed point item {item!r}")
        pairs[key.strip()] = value
    return parse_point(pairs, space)


def load_point(path: Union[str, Path], space: SpaceDef = TUNING_SPACE) -> ConfigPoint:
    return parse_point(kv_format.load(path), space)


def dump_point(point: ConfigPoint, path: Union[str, Path], space: SpaceDef = TUNING_SPACE) -> None:
    kv_format.dump(point_pairs(point, space), path)


def export_space(space: SpaceDef = TUNING_SPACE) -> str:
    """Reference table of the space: name, kind, range, activation."""
    lines = ["name\tkind\trange\tactive_when"]
    for dim in space.dimensions:
        gate = "always" if dim.active_when is None else "=".join(dim.active_when)
        lines.append(f"{dim.name}\t{dim.kind.value}\t{dim.range_text()}\t{gate}")
    return "\n".join(lines) + "\n"
