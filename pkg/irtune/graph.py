# irtune/graph.py
from typing import Callable, Optional, Sequence

from langgraph.graph import END, START, StateGraph

from irtune.bayesopt.state import BoState, LoopSettings, Observation
from irtune.hyperspace.space import ConfigPoint, SpaceDef
from irtune.nodes import LoopContext, LoopState, bo_node, design_node, ir_node
from irtune.nodes.common_state import HistorySink
from irtune.utils.errors import ObjectiveError
from irtune.utils.logging_utils import get_logger

logger = get_logger("BoLoop")


def build_graph(context: LoopContext):
    """Compile the optimize-evaluate loop: (design | bo) -> ir -> route."""
    settings = context.settings

    def design(state: LoopState) -> dict:
        return design_node(state, context)

    def propose(state: LoopState) -> dict:
        return bo_node(state, context)

    def evaluate(state: LoopState) -> dict:
        return ir_node(state, context)

    # Conditional routing, both at START (resumed histories) and after each evaluation
    def next_step(state: LoopState) -> str:
        if state.get("error_message"):
            logger.error("Error detected from IR module, routing to END.")
            return END
        done = len(state["history"])
        if done >= settings.budget:
            return END
        return "design_node" if done < settings.init_n else "bo_node"

    def after_proposal(state: LoopState) -> str:
        if state.get("error_message"):
            logger.error("Error detected from BO module, routing to END.")
            return END
        return "ir_node"

    graph = StateGraph(LoopState)
    graph.add_node("design_node", design)
    graph.add_node("bo_node", propose)
    graph.add_node("ir_node", evaluate)

    graph.add_conditional_edges(START, next_step)
    graph.add_edge("design_node", "ir_node")
    graph.add_conditional_edges("bo_node", after_proposal)
    graph.add_conditional_edges("ir_node", next_step)
    return graph.compile()


def run_bo_loop(
    objective: Callable[[ConfigPoint], float],
    space: SpaceDef,
    settings: Optional[LoopSettings] = None,
    *,
    history: Optional[Sequence[Observation]] = None,
    sink: Optional[HistorySink] = None,
    **overrides,
) -> BoState:
    """Run the loop until `budget` evaluations exist, continuing from `history` if given.

    Keyword overrides (budget, init_n, n_candidates, seed, ...) replace fields
    of `settings`. An objective failure raises ObjectiveError after the
    records written so far have reached `sink`.
    """
    base = settings or LoopSettings()
    settings = LoopSettings(**{**base.model_dump(), **overrides})
    history = list(history or [])
    if history:
        logger.info(f"Resuming from {len(history)} recorded evaluations")

    app = build_graph(LoopContext(objective=objective, space=space, settings=settings, sink=sink))
    initial: LoopState = {"history": history, "pending": None, "kernel": None, "error_message": None}
    final = app.invoke(initial, {"recursion_limit": 2 * settings.budget + 10})

    state = BoState(history=final["history"], budget=max(settings.budget, len(final["history"])), seed=settings.seed)
    if final.get("error_message"):
        raise ObjectiveError(final["error_message"])
    best = state.best
    if best is not None:
        logger.info(f"Finished {len(state.history)} evaluations, best y={best[1]:.4f}")
    return state
