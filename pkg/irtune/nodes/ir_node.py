import math

from irtune.bayesopt.state import Observation
from irtune.hyperspace.space import encode
from irtune.nodes.common_state import LoopContext, LoopState
from irtune.utils.logging_utils import get_logger

logger = get_logger("IrModule")


def ir_node(state: LoopState, context: LoopContext) -> dict:
    """Evaluate the pending point, append the observation and stream its history record."""
    point = state.get("pending")
    history = state["history"]
    iteration = len(history) + 1
    if point is None:
        return {"error_message": f"iteration {iteration}: no point to evaluate"}
    try:
        y = float(context.objective(point))
        if not math.isfinite(y):
            raise ValueError(f"objective returned {y}")
    except Exception as e:
        logger.error(f"Objective failed at iteration {iteration}: {e}")
        return {"error_message": f"iteration {iteration}: {type(e).__name__}: {e}", "pending": None}

    observation = Observation(x=encode(context.space, point), point=point, y=y)
    previous_best = max((obs.y for obs in history), default=-math.inf)
    incumbent = max(previous_best, y)
    if context.sink is not None:
        context.sink(iteration, observation, incumbent)
    marker = " (new best)" if y > previous_best else ""
    logger.info(f"Iteration {iteration}/{context.settings.budget}: y={y:.4f} best={incumbent:.4f}{marker}")
    return {"history": [observation], "pending": None}
