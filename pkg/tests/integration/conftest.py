import logging
from collections.abc import Generator

import pytest

from gp_spectra.logging import setup_logger


@pytest.fixture(autouse=True)
def restore_logging() -> Generator[None, None, None]:
    # `main` reconfigures the package logger on every call
    yield
    setup_logger(level=logging.INFO)
