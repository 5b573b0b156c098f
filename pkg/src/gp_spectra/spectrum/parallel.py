from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import TYPE_CHECKING, TypeVar

from gp_spectra.config import default_threads
from gp_spectra.logging import logger

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

T = TypeVar("T")


def map_modes(
    fn: Callable[[int], T],
    n_values: Sequence[int],
    threads: int | None = None,
) -> list[T]:
    """Apply `fn` to every mode index, concurrently, returning results in input order.

    `threads` defaults to `SPECTRA_THREADS` or the CPU count. The first exception
    raised by any mode is re-raised.
    """
    workers = min(threads or default_threads(), max(1, len(n_values)))
    if workers == 1:
        return [fn(n) for n in n_values]
    logger.debug("fanning %d modes out to %d threads", len(n_values), workers)
    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="gp-spectra") as pool:
        return list(pool.map(fn, n_values))
