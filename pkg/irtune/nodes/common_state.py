import operator
from dataclasses import dataclass
from typing import Annotated, Callable, List, Optional, TypedDict

from irtune.bayesopt.gp import KernelParams
from irtune.bayesopt.state import LoopSettings, Observation
from irtune.hyperspace.space import ConfigPoint, SpaceDef


def merge_optional_strings(left: Optional[str], right: Optional[str]) -> Optional[str]:
    """Custom reducer for optional string fields - keeps the first non-None value"""
    if left is not None:
        return left
    return right


class LoopState(TypedDict):
    # Observations are only ever appended
    history: Annotated[List[Observation], operator.add]

    # Point proposed by design_node or bo_node, consumed by ir_node
    pending: Optional[ConfigPoint]

    # Surrogate hyperparameters chosen by the last refit
    kernel: Optional[KernelParams]

    # Error handling field - set by ir_node when the objective fails, by bo_node when the surrogate cannot be fitted
    error_message: Annotated[Optional[str], merge_optional_strings]


HistorySink = Callable[[int, Observation, float], None]


@dataclass(frozen=True)
class LoopContext:
    """What the nodes share but the graph state does not carry: objective, space, settings, sink."""
    objective: Callable[[ConfigPoint], float]
    space: SpaceDef
    settings: LoopSettings
    sink: Optional[HistorySink] = None
