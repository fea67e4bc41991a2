import logging
import sys

ROOT_LOGGER = "irtune"


class BracketFormatter(logging.Formatter):
    """Renders records as `>>>[Component] message`."""

    def format(self, record: logging.LogRecord) -> str:
        component = record.name.rsplit(".", 1)[-1]
        prefix = ">>>" if record.levelno < logging.WARNING else f"!!! {record.levelname} "
        return f"{prefix}[{component}] {record.getMessage()}"


def get_logger(component: str) -> logging.Logger:
    return logging.getLogger(f"{ROOT_LOGGER}.{component}")


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    root = logging.getLogger(ROOT_LOGGER)
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(BracketFormatter())
    root.addHandler(handler)
    if quiet:
        root.setLevel(logging.WARNING)
    else:
        root.setLevel(logging.DEBUG if verbose else logging.INFO)
    root.propagate = False
