from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from irtune.hyperspace.space import ConfigPoint
from irtune.utils.config import OptimizerConfig


class Observation(BaseModel):
    """One evaluated configuration: encoded x, the point itself and its objective value."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    x: np.ndarray
    point: ConfigPoint
    y: float

    @field_validator("y")
    @classmethod
    def _finite(cls, y: float) -> float:
        if not np.isfinite(y):
            raise ValueError("objective value must be finite")
        return float(y)


class BoState(BaseModel):
    history: List[Observation] = Field(default_factory=list)
    budget: int = Field(ge=1)
    seed: int = 42

    @property
    def best(self) -> Optional[Tuple[ConfigPoint, float]]:
        """Incumbent (first occurrence of the maximum)."""
        if not self.history:
            return None
        top = max(range(len(self.history)), key=lambda i: (self.history[i].y, -i))
        return self.history[top].point, self.history[top].y

    def incumbents(self) -> List[float]:
        """Running maximum of y after each evaluation."""
        return np.maximum.accumulate([obs.y for obs in self.history]).tolist() if self.history else []


class LoopSettings(BaseModel):
    """Everything the optimize-evaluate loop needs besides the objective and the space."""
    model_config = ConfigDict(frozen=True)

    budget: int = Field(default=50, ge=1)
    init_n: int = Field(default=10, ge=1)
    n_candidates: int = Field(default=2000, ge=1)
    seed: int = Field(default=42, ge=0)
    lengthscale: float = Field(default=0.5, gt=0)
    noise_var: float = Field(default=1e-4, gt=0)
    signal_var_floor: float = Field(default=1e-4, gt=0)
    max_jitter: float = Field(default=1e-4, gt=0)
    refit_every: int = Field(default=5, ge=0)
    lengthscale_grid: Tuple[float, ...] = tuple(round(0.1 * i, 1) for i in range(1, 21))
    noise_grid: Tuple[float, ...] = (1e-6, 1e-5, 1e-4, 1e-3, 1e-2)

    @model_validator(mode="after")
    def _check_budget(self) -> "LoopSettings":
        if self.init_n > self.budget:
            raise ValueError(f"init_n ({self.init_n}) exceeds budget ({self.budget})")
        return self

    @classmethod
    def from_optimizer_config(cls, optimizer: OptimizerConfig, **overrides) -> "LoopSettings":
        values = dict(
            budget=optimizer.budget,
            init_n=optimizer.init,
            n_candidates=optimizer.candidates,
            seed=optimizer.seed,
            lengthscale=optimizer.lengthscale,
            noise_var=optimizer.noise_var,
            signal_var_floor=optimizer.signal_var_floor,
            max_jitter=optimizer.max_jitter,
            refit_every=optimizer.refit_every,
            lengthscale_grid=tuple(optimizer.lengthscale_grid),
            noise_grid=tuple(optimizer.noise_grid),
        )
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


def iteration_rng(seed: int, iteration: int) -> np.random.Generator:
    """Generator for one iteration, independent of how many draws earlier iterations made."""
    return np.random.default_rng([seed, iteration])
