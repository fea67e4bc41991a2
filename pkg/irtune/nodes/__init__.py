# irtune/nodes/__init__.py
from .common_state import LoopContext, LoopState
from .design_node import design_node
from .bo_node import bo_node
from .ir_node import ir_node

__all__ = [
    "LoopContext",
    "LoopState",
    "design_node",
    "bo_node",
    "ir_node",
]
