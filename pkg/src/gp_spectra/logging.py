import logging
from typing import Any

from rich.console import Console
from rich.logging import RichHandler

logger = logging.getLogger("gp_spectra")

QUIET = logging.CRITICAL
"""Level of the `spectra` command without `-v`; failures are reported as JSON instead."""


def verbosity_level(count: int) -> int:
    """Map the number of `-v` flags to a logging level."""
    if count <= 0:
        return QUIET
    return logging.INFO if count == 1 else logging.DEBUG


def setup_logger(
    level: int = logging.ERROR,
    rich_tracebacks: bool = True,
    log_format: str | None = None,
    propagate: bool = False,
    console: Console | None = None,
    **kwargs: Any,
) -> None:
    """Configure the gp_spectra logger.

    Records go to stderr unless another `console` is given, so that data written
    to stdout stays machine readable.

    Args:
        level: The logging level to use (default: logging.ERROR)
        rich_tracebacks: Whether to enable rich tracebacks (default: True)
        log_format: Optional custom log format string
        propagate: Whether to propagate logs to parent loggers (default: False)
        console: Rich console to write to (default: a stderr console)
        **kwargs: Additional keyword arguments to pass to RichHandler

    """
    logger.setLevel(level)
    logger.propagate = propagate

    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    handler = RichHandler(
        console=console or Console(stderr=True),
        rich_tracebacks=rich_tracebacks,
        markup=False,
        **kwargs,
    )

    if log_format:
        handler.setFormatter(logging.Formatter(log_format))

    logger.addHandler(handler)


setup_logger()
