"""
Logging configuration. Everything goes to stderr so JSON output on stdout stays clean.
"""
import logging

from rich.console import Console
from rich.logging import RichHandler

from .config import Config

_configured = False


def setup_logging(level: str | None = None) -> None:
    """
    Installs a rich handler on the root logger once per process.

    Args:
        level: logging level name (defaults to Config.LOG_LEVEL)
    """
    global _configured
    if _configured:
        if level:
            logging.getLogger().setLevel(level.upper())
        return

    handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        markup=False,
    )
    logging.basicConfig(
        level=(level or Config.LOG_LEVEL).upper(),
        format="%(message)s",
        datefmt="[%X]",
        handlers=[handler],
    )
    _configured = True
