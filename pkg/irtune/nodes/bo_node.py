import numpy as np

from irtune.bayesopt.acquisition import propose_next
from irtune.bayesopt.gp import KernelParams, default_kernel, gp_fit, refit_kernel
from irtune.bayesopt.state import LoopSettings, iteration_rng
from irtune.nodes.common_state import LoopContext, LoopState
from irtune.utils.errors import SingularKernel
from irtune.utils.logging_utils import get_logger

logger = get_logger("BoModule")


def _refit_on(X: np.ndarray, y: np.ndarray, settings: LoopSettings) -> KernelParams:
    start = default_kernel(y, settings.lengthscale, settings.noise_var, settings.signal_var_floor)
    return refit_kernel(X, y, start, settings.lengthscale_grid, settings.noise_grid, settings.max_jitter)


def bo_node(state: LoopState, context: LoopContext) -> dict:
    """Fit the surrogate on the history and propose the EI-argmax candidate.

    Signal variance follows the observed spread on every fit. Lengthscale and
    noise are re-chosen by marginal likelihood on every `refit_every`-th fit,
    counted from the end of the initial design, so a resumed loop refits on
    the same history prefixes as an uninterrupted one. A kernel that stays
    singular after the jitter ladder ends the loop through `error_message`.
    """
    history = state["history"]
    iteration = len(history) + 1
    try:
        return _propose(history, state.get("kernel"), context, iteration)
    except SingularKernel as e:
        logger.error(f"Surrogate fit failed at iteration {iteration}: {e}")
        return {"error_message": f"iteration {iteration}: SingularKernel: {e}"}


def _propose(history, kernel, context: LoopContext, iteration: int) -> dict:
    settings = context.settings
    X = np.vstack([obs.x for obs in history])
    y = np.asarray([obs.y for obs in history], dtype=np.float64)

    if settings.refit_every:
        fit_index = max(len(history) - settings.init_n, 0)
        if fit_index % settings.refit_every == 0:
            kernel = _refit_on(X, y, settings)
            logger.info(f"Refit surrogate: lengthscale={kernel.lengthscale:g}, noise={kernel.noise_var:g}")
        elif kernel is None:
            # resumed between refits: recover the last refit from its history prefix
            prefix = len(history) - fit_index % settings.refit_every
            kernel = _refit_on(X[:prefix], y[:prefix], settings)
    if kernel is None:
        kernel = KernelParams(lengthscale=settings.lengthscale, noise_var=settings.noise_var)
    kernel = default_kernel(y, kernel.lengthscale, kernel.noise_var, settings.signal_var_floor)

    model = gp_fit(X, y, kernel, settings.max_jitter)
    point = propose_next(
        model, context.space, float(y.max()), settings.n_candidates, iteration_rng(settings.seed, iteration)
    )
    return {"pending": point, "kernel": kernel}
