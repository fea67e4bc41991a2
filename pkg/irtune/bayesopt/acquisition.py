from typing import Union

import numpy as np
from scipy.stats import norm

from irtune.bayesopt.gp import GpModel, gp_posterior_batch
from irtune.hyperspace.space import ConfigPoint, SpaceDef, encode_batch, sample_random
from irtune.utils.logging_utils import get_logger

logger = get_logger("Acquisition")

ArrayLike = Union[float, np.ndarray]


def expected_improvement(mean: ArrayLike, var: ArrayLike, f_best: float) -> ArrayLike:
    """Plain EI for maximization; max(mean - f_best, 0) where the variance is 0."""
    mean = np.asarray(mean, dtype=np.float64)
    sigma = np.sqrt(np.maximum(np.asarray(var, dtype=np.float64), 0.0))
    gain = mean - f_best
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(sigma > 0, gain / np.where(sigma > 0, sigma, 1.0), 0.0)
    ei = np.where(sigma > 0, gain * norm.cdf(z) + sigma * norm.pdf(z), np.maximum(gain, 0.0))
    ei = np.maximum(ei, 0.0)
    return float(ei) if ei.ndim == 0 else ei


def propose_next(
    model: GpModel, space: SpaceDef, f_best: float, n_candidates: int, rng: np.random.Generator
) -> ConfigPoint:
    """EI-argmax over `n_candidates` random valid points; ties go to the earliest candidate."""
    if n_candidates < 1:
        raise ValueError("n_candidates must be >= 1")
    candidates = [sample_random(space, rng) for _ in range(n_candidates)]
    mean, var = gp_posterior_batch(model, encode_batch(space, candidates, check=False))
    ei = expected_improvement(mean, var, f_best)
    chosen = int(np.argmax(ei))
    logger.debug(f"Best EI {ei[chosen]:.6g} at candidate {chosen} (mean={mean[chosen]:.4f}, var={var[chosen]:.3g})")
    return candidates[chosen]
