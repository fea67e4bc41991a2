"""Gaussian-process regression with a squared-exponential kernel.

Targets are centered on their mean; K + noise*I is factorized once with a
Cholesky decomposition, escalating a diagonal jitter when the factorization
fails.
"""
from dataclasses import dataclass, replace
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve
from scipy.spatial.distance import cdist

from irtune.utils.errors import SingularKernel
from irtune.utils.logging_utils import get_logger

logger = get_logger("Surrogate")

JITTER_START = 1e-10


@dataclass(frozen=True)
class KernelParams:
    signal_var: float = 1.0
    lengthscale: float = 0.5
    noise_var: float = 1e-4


@dataclass(frozen=True)
class GpModel:
    kernel: KernelParams
    X: np.ndarray
    y: np.ndarray
    mean_const: float
    factor: Optional[Tuple[np.ndarray, bool]]
    alpha: np.ndarray
    jitter: float = 0.0

    @property
    def n(self) -> int:
        return int(self.y.size)


def kernel_se(x1, x2, signal_var: float, lengthscale: float):
    """σf² exp(-|x1-x2|² / 2ℓ²). Vectors give a float, 2-D arrays a matrix."""
    if lengthscale <= 0:
        raise ValueError("lengthscale must be > 0")
    a, b = np.asarray(x1, dtype=np.float64), np.asarray(x2, dtype=np.float64)
    if a.ndim == 1 and b.ndim == 1:
        sq = float(np.sum((a - b) ** 2))
        return signal_var * float(np.exp(-sq / (2.0 * lengthscale**2)))
    sq = cdist(np.atleast_2d(a), np.atleast_2d(b), "sqeuclidean")
    return signal_var * np.exp(-sq / (2.0 * lengthscale**2))


def default_kernel(
    y: Sequence[float], lengthscale: float = 0.5, noise_var: float = 1e-4, signal_var_floor: float = 1e-4
) -> KernelParams:
    """Signal variance from the observed spread, floored."""
    y = np.asarray(y, dtype=np.float64)
    signal_var = float(np.var(y)) if y.size else 0.0
    return KernelParams(signal_var=max(signal_var, signal_var_floor), lengthscale=lengthscale, noise_var=noise_var)


def _factorize(K: np.ndarray, max_jitter: float) -> Tuple[Tuple[np.ndarray, bool], float]:
    jitter = 0.0
    while True:
        try:
            return cho_factor(K + jitter * np.eye(K.shape[0]), lower=True), jitter
        except LinAlgError:
            jitter = JITTER_START if jitter == 0.0 else jitter * 10.0
            if jitter > max_jitter * (1 + 1e-9):
                raise SingularKernel(f"kernel matrix not positive definite with jitter up to {max_jitter:g}")
            logger.warning(f"Cholesky failed, retrying with jitter {jitter:g}")


def gp_fit(X, y, kernel: KernelParams, max_jitter: float = 1e-4) -> GpModel:
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64).ravel()
    if y.size == 0:
        # no data: the prior, mean 0 and variance signal_var everywhere
        return GpModel(kernel=kernel, X=np.zeros((0, 0)), y=y, mean_const=0.0, factor=None, alpha=np.zeros(0))
    X = np.atleast_2d(X)
    mean_const = float(np.mean(y))
    K = kernel_se(X, X, kernel.signal_var, kernel.lengthscale) + kernel.noise_var * np.eye(y.size)
    factor, jitter = _factorize(K, max_jitter)
    alpha = cho_solve(factor, y - mean_const)
    return GpModel(kernel=kernel, X=X, y=y, mean_const=mean_const, factor=factor, alpha=alpha, jitter=jitter)


def gp_posterior_batch(model: GpModel, Xs) -> Tuple[np.ndarray, np.ndarray]:
    """Posterior means and latent variances (clamped at 0) at the rows of Xs."""
    Xs = np.atleast_2d(np.asarray(Xs, dtype=np.float64))
    prior_var = np.full(Xs.shape[0], model.kernel.signal_var)
    if model.factor is None:
        return np.zeros(Xs.shape[0]), prior_var
    k_star = kernel_se(Xs, model.X, model.kernel.signal_var, model.kernel.lengthscale)
    mean = model.mean_const + k_star @ model.alpha
    v = cho_solve(model.factor, k_star.T)
    var = prior_var - np.einsum("ij,ji->i", k_star, v)
    return mean, np.maximum(var, 0.0)


def gp_posterior(model: GpModel, x) -> Tuple[float, float]:
    mean, var = gp_posterior_batch(model, np.asarray(x, dtype=np.float64).reshape(1, -1))
    return float(mean[0]), float(var[0])


def log_marginal_likelihood(X, y, kernel: KernelParams, max_jitter: float = 1e-4) -> float:
    model = gp_fit(X, y, kernel, max_jitter)
    if model.factor is None:
        return 0.0
    lower, _ = model.factor
    centered = model.y - model.mean_const
    return float(
        -0.5 * centered @ model.alpha - np.sum(np.log(np.diag(lower))) - 0.5 * model.n * np.log(2 * np.pi)
    )


def refit_kernel(
    X,
    y,
    kernel: KernelParams,
    lengthscale_grid: Sequence[float],
    noise_grid: Sequence[float],
    max_jitter: float = 1e-4,
) -> KernelParams:
    """Grid-search lengthscale and noise maximizing the log marginal likelihood (first maximum wins)."""
    best, best_lml = kernel, -np.inf
    for lengthscale in lengthscale_grid:
        for noise_var in noise_grid:
            candidate = replace(kernel, lengthscale=float(lengthscale), noise_var=float(noise_var))
            try:
                lml = log_marginal_likelihood(X, y, candidate, max_jitter)
            except SingularKernel:
                continue
            if lml > best_lml:
                best, best_lml = candidate, lml
    logger.debug(f"Refit kernel: lengthscale={best.lengthscale:g} noise={best.noise_var:g} lml={best_lml:.4f}")
    return best
