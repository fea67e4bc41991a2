# irtune/utils/__init__.py
from .config import Config, load_config
from .errors import IrTuneError, UserError
from .logging_utils import configure_logging, get_logger

__all__ = [
    "Config",
    "load_config",
    "IrTuneError",
    "UserError",
    "configure_logging",
    "get_logger",
]
