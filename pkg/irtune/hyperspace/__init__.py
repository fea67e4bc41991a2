# irtune/hyperspace/__init__.py
from .space import TUNING_SPACE, ConfigPoint, SpaceDef, encode, sample_random, tuning_space, validate

__all__ = [
    "TUNING_SPACE",
    "ConfigPoint",
    "SpaceDef",
    "encode",
    "sample_random",
    "tuning_space",
    "validate",
]
