import json
import logging
from collections.abc import Callable
from pathlib import Path

import numpy as np
import pytest

from gp_spectra.chareq import EquationSystem
from gp_spectra.logging import setup_logger
from gp_spectra.measure import Discrete, PowerLaw, Sum
from gp_spectra.testing.helpers import LIGHT_ATOMS, HEAVY_ATOMS


@pytest.fixture(autouse=True, scope="session")
def configure_logging(pytestconfig: pytest.Config) -> None:
    """Configure the logging level based on the verbosity of the test run.
    This is a session fixture, so it only gets called once per test session.
    """
    verbosity = pytestconfig.getoption("verbose")
    level = logging.DEBUG if verbosity > 0 else logging.INFO
    setup_logger(level=level)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def light_atoms() -> Discrete:
    return LIGHT_ATOMS


@pytest.fixture
def heavy_atoms() -> Discrete:
    return HEAVY_ATOMS


@pytest.fixture
def single_atom() -> Discrete:
    return Discrete.of((1.0, 1.0))


@pytest.fixture
def power_law() -> PowerLaw:
    return PowerLaw(b=1.0, rho=0.5)


@pytest.fixture
def mixed_measure() -> Sum:
    return Sum(parts=(Discrete.of((0.5, 2.0)), PowerLaw(b=0.25, rho=0.5)))


@pytest.fixture
def kv_single_atom(single_atom: Discrete) -> EquationSystem:
    return EquationSystem.kv(single_atom, epsilon=0.1)


@pytest.fixture
def write_system(tmp_path: Path) -> Callable[..., Path]:
    """Write a system to JSON and return its path."""

    def _write(system: EquationSystem, name: str = "system.json") -> Path:
        path = tmp_path / name
        path.write_text(system.model_dump_json())
        return path

    return _write


@pytest.fixture
def raw_system_file(tmp_path: Path) -> Callable[[object], Path]:
    def _write(data: object) -> Path:
        path = tmp_path / "raw.json"
        path.write_text(json.dumps(data))
        return path

    return _write
