# irtune/bayesopt/__init__.py
from .acquisition import expected_improvement, propose_next
from .gp import GpModel, KernelParams, gp_fit, gp_posterior, kernel_se
from .objective import RetrievalObjective, objective_map
from .state import BoState, LoopSettings, Observation

__all__ = [
    "expected_improvement",
    "propose_next",
    "GpModel",
    "KernelParams",
    "gp_fit",
    "gp_posterior",
    "kernel_se",
    "RetrievalObjective",
    "objective_map",
    "BoState",
    "LoopSettings",
    "Observation",
]
