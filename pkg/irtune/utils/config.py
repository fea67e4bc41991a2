from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, Field, ValidationError

from . import kv_format
from .errors import InvalidConfig

DEFAULT_STOPLIST = Path(__file__).resolve().parent.parent / "indexing" / "stopwords.txt"


class IndexConfig(BaseModel):
    stoplist: Path = Field(default=DEFAULT_STOPLIST)


class RetrievalSettings(BaseModel):
    depth: int = Field(default=1000, ge=1)
    query_fields: List[str] = Field(default_factory=lambda: ["title"])


class OptimizerConfig(BaseModel):
    budget: int = Field(default=50, ge=1)
    init: int = Field(default=10, ge=1)
    candidates: int = Field(default=2000, ge=1)
    seed: int = Field(default=42, ge=0)
    lengthscale: float = Field(default=0.5, gt=0)
    noise_var: float = Field(default=1e-4, gt=0)
    signal_var_floor: float = Field(default=1e-4, gt=0)
    max_jitter: float = Field(default=1e-4, gt=0)
    refit_every: int = Field(default=5, ge=0)
    lengthscale_grid: List[float] = Field(default_factory=lambda: [round(0.1 * i, 1) for i in range(1, 21)])
    noise_grid: List[float] = Field(default_factory=lambda: [1e-6, 1e-5, 1e-4, 1e-3, 1e-2])


class Config(BaseModel):
    index: IndexConfig = Field(default_factory=IndexConfig)
    retrieval: RetrievalSettings = Field(default_factory=RetrievalSettings)
    optimizer: OptimizerConfig = Field(default_factory=OptimizerConfig)

    # Range overrides for hyperparameter dimensions, name -> (low, high).
    space: Dict[str, Tuple[float, float]] = Field(default_factory=dict)

    def update_from_dict(self, update_dict: Dict[str, Any]) -> None:
        """Apply nested updates. Sections are replaced by re-validated copies."""
        for key, value in update_dict.items():
            if not hasattr(self, key):
                raise InvalidConfig(f"unknown settings section {key!r}")
            if key == "index" and isinstance(value, dict):
                self.index = IndexConfig(**{**self.index.model_dump(), **value})
            elif key == "retrieval" and isinstance(value, dict):
                self.retrieval = RetrievalSettings(**{**self.retrieval.model_dump(), **value})
            elif key == "optimizer" and isinstance(value, dict):
                self.optimizer = OptimizerConfig(**{**self.optimizer.model_dump(), **value})
            elif key == "space" and isinstance(value, dict):
                self.space = {**self.space, **value}
            else:
                setattr(self, key, value)


LIST_KEYS = {"query_fields", "lengthscale_grid", "noise_grid"}


def _nest(pairs: Dict[str, str]) -> Dict[str, Dict[str, Any]]:
    nested: Dict[str, Dict[str, Any]] = {}
    for dotted, raw in pairs.items():
        section, sep, name = dotted.partition(".")
        if not sep or not name:
            raise InvalidConfig(f"settings key {dotted!r} must look like section.name")
        if section == "space" or name in LIST_KEYS:
            value: Any = [part.strip() for part in raw.split(",") if part.strip()]
            if section == "space" and len(value) != 2:
                raise InvalidConfig(f"range override {dotted} must be low,high")
        else:
            value = raw
        nested.setdefault(section, {})[name] = value
    return nested


def load_config(path: Optional[Union[str, Path]] = None) -> Config:
    """Defaults, optionally overridden by a flat key=value settings file."""
    loaded = Config()
    if path is None:
        return loaded
    try:
        loaded.update_from_dict(_nest(kv_format.load(path)))
    except ValidationError as e:
        raise InvalidConfig([f"{'.'.join(map(str, err['loc']))}: {err['msg']}" for err in e.errors()]) from e
    for name, (low, high) in list(loaded.space.items()):
        if float(low) > float(high):
            raise InvalidConfig(f"range override {name}: low > high")
        loaded.space[name] = (float(low), float(high))
    return loaded
