from irtune.bayesopt.state import iteration_rng
from irtune.hyperspace.space import sample_random
from irtune.nodes.common_state import LoopContext, LoopState
from irtune.utils.logging_utils import get_logger

logger = get_logger("InitialDesign")


def design_node(state: LoopState, context: LoopContext) -> dict:
    """Initial design: one uniformly random valid point."""
    iteration = len(state["history"]) + 1
    logger.debug(f"Sampling random point for iteration {iteration}")
    point = sample_random(context.space, iteration_rng(context.settings.seed, iteration))
    return {"pending": point}
