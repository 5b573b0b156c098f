import io
import logging

import pytest
from rich.console import Console
from rich.logging import RichHandler

from gp_spectra.logging import QUIET, setup_logger, verbosity_level


def test_setup_logger_sets_level_and_propagate(local_logger: logging.Logger) -> None:
    setup_logger(level=logging.INFO, propagate=False)
    assert local_logger.level == logging.INFO
    assert local_logger.propagate is False
    setup_logger(level=logging.DEBUG, propagate=True)
    assert local_logger.level == logging.DEBUG
    assert local_logger.propagate is True


def test_setup_logger_replaces_handlers(local_logger: logging.Logger) -> None:
    dummy_handler = logging.StreamHandler()
    local_logger.addHandler(dummy_handler)
    setup_logger()
    assert dummy_handler not in local_logger.handlers
    assert len(local_logger.handlers) == 1
    assert isinstance(local_logger.handlers[0], RichHandler)
    assert local_logger.level == logging.ERROR


def test_setup_logger_with_custom_format(local_logger: logging.Logger) -> None:
    custom_format = "%(levelname)s: %(message)s"
    setup_logger(log_format=custom_format)
    handler = local_logger.handlers[0]
    assert isinstance(handler.formatter, logging.Formatter)
    assert handler.formatter._fmt == custom_format


def test_setup_logger_writes_to_stderr(local_logger: logging.Logger) -> None:
    setup_logger()
    handler = local_logger.handlers[0]
    assert isinstance(handler, RichHandler)
    assert handler.console.stderr is True


def test_setup_logger_with_custom_console(local_logger: logging.Logger) -> None:
    buffer = io.StringIO()
    setup_logger(level=logging.INFO, console=Console(file=buffer))
    local_logger.info("hello")
    assert "hello" in buffer.getvalue()


@pytest.mark.parametrize(
    ("count", "level"), [(0, QUIET), (1, logging.INFO), (2, logging.DEBUG), (3, logging.DEBUG)]
)
def test_verbosity_level(count: int, level: int) -> None:
    assert verbosity_level(count) == level
