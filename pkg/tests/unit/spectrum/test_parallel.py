import threading

import pytest

from gp_spectra.config import THREADS_ENV_VAR, default_threads
from gp_spectra.spectrum.parallel import map_modes


def test_results_keep_input_order() -> None:
    assert map_modes(lambda n: n * n, [5, 1, 3, 2], threads=4) == [25, 1, 9, 4]


def test_single_worker_runs_in_the_calling_thread() -> None:
    names = map_modes(lambda _: threading.current_thread().name, [1, 2, 3], threads=1)
    assert names == [threading.current_thread().name] * 3


def test_workers_are_named() -> None:
    names = map_modes(lambda _: threading.current_thread().name, [1, 2, 3, 4], threads=2)
    assert all(name.startswith("gp-spectra") for name in names)


def test_first_error_is_raised() -> None:
    def fail_on_three(n: int) -> int:
        if n == 3:
            msg = "mode 3"
            raise RuntimeError(msg)
        return n

    with pytest.raises(RuntimeError, match="mode 3"):
        map_modes(fail_on_three, [1, 2, 3, 4], threads=2)


def test_thread_count_from_the_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv(THREADS_ENV_VAR, "3")
    assert default_threads() == 3
    monkeypatch.setenv(THREADS_ENV_VAR, "0")
    assert default_threads() == 1
    monkeypatch.setenv(THREADS_ENV_VAR, "many")
    assert default_threads() >= 1
