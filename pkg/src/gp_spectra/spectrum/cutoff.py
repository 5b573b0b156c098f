"""Constructive mode bound beyond which the Kelvin-Voigt spectrum is real.

On the ray left of the support, f(x) = K(x) - εx - 1 is strictly decreasing and
positive left of its zero r_1. If n√f(r) > -r at some r < r_1, the real map
x ↦ nφ(f(x)) sends r below itself, which traps an attracting real fixed point
and leaves no room for a non-real zero of H_n. Minimising -r/√f(r) over r gives
the smallest such n.
"""

from __future__ import annotations

import math

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.optimize import brentq, minimize_scalar

from gp_spectra.cauchy import eval_K
from gp_spectra.chareq import CharacteristicFn, EquationSystem, phi
from gp_spectra.config import EquationKind
from gp_spectra.errors import GridExhaustedError, InvariantError, UnsupportedError
from gp_spectra.logging import logger
from gp_spectra.measure import is_discrete, support_max, support_min
from gp_spectra.polyoracle import DEFAULT_IM_TOL, DEFAULT_ROOT_TOL, all_roots, clear_denominators, count_nonreal

from .parallel import map_modes

GRID_POINTS = 64
_MAX_EXPANSIONS = 200


class KvCutoff(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    n_star: int
    """Every mode n >= n_star has only real zeros."""

    r_star: float
    """The minimiser of -r/√f(r)."""

    witness: float
    """f(r_star) > 0."""

    zero_crossing: float
    """r_1, the zero of f left of the support; the search runs over r < r_1."""

    objective: float
    """-r_star/√f(r_star)."""


def _require_kv(sys: EquationSystem) -> None:
    if sys.kind is not EquationKind.KV:
        msg = f"the cutoff is defined for kv systems, got {sys.kind.value}"
        raise UnsupportedError(msg, hypothesis="equation kv")


def _require_compact_support(sys: EquationSystem) -> None:
    lo, hi = support_min(sys.measure), support_max(sys.measure)
    if not (lo > 0 and math.isfinite(hi)):
        msg = "the KV cutoff needs a measure with compact support in (0, inf)"
        raise UnsupportedError(msg, hypothesis="compact support")


def _f(sys: EquationSystem, x: float) -> float:
    assert sys.epsilon is not None
    return eval_K(sys.measure, x).value.real - sys.epsilon * x - 1


def real_map(cf: CharacteristicFn, x: float) -> complex:
    """Boundary value nφ(K(x) - εx - 1) of the KV map at a real `x` off the poles."""
    if cf.kind is not EquationKind.KV:
        msg = f"real_map is defined for kv, got {cf.kind.value}"
        raise UnsupportedError(msg, hypothesis="equation kv")
    return cf.n * phi(complex(_f(cf.system, x), 0.0))


def _zero_crossing(sys: EquationSystem, d: float) -> float:
    # f -> -inf at the pole -d and f -> +inf as x -> -inf
    near = 1e-3 * (1 + d)
    for _ in range(_MAX_EXPANSIONS):
        if _f(sys, -d - near) < 0:
            break
        near /= 10
    else:
        msg = "f stays positive next to the support"
        raise GridExhaustedError(msg)

    far = 1 + d
    for _ in range(_MAX_EXPANSIONS):
        if _f(sys, -d - far) > 0:
            break
        far *= 2
    else:
        msg = "f stays non-positive on the searched ray; widen the grid"
        raise GridExhaustedError(msg)
    return float(brentq(lambda x: _f(sys, x), -d - far, -d - near, xtol=1e-14, rtol=1e-15))


def kv_nonreal_cutoff(sys: EquationSystem) -> KvCutoff:
    """The mode index n_star past which H_n has only real zeros.

    Raises `UnsupportedError` for non-KV systems or measures without compact
    support, and `GridExhaustedError` if the minimiser is not inside the search grid.
    """
    _require_kv(sys)
    _require_compact_support(sys)
    assert sys.epsilon is not None
    d = support_max(sys.measure)
    r_one = _zero_crossing(sys, d)

    def objective(log_s: float) -> float:
        r = r_one - math.exp(log_s)
        return -r / math.sqrt(_f(sys, r))

    # geometric pre-grid over the distance s = r_1 - r
    scale = 1 + abs(r_one)
    log_grid = np.linspace(
        math.log(1e-6 * scale), math.log(1e6 * scale * (1 + 1 / sys.epsilon)), GRID_POINTS
    )
    values = [objective(t) for t in log_grid]
    j = int(np.argmin(values))
    if j in (0, GRID_POINTS - 1):
        msg = f"minimum of the cutoff objective sits at the grid edge (index {j})"
        raise GridExhaustedError(msg)

    result = minimize_scalar(
        objective,
        bracket=(log_grid[j - 1], log_grid[j], log_grid[j + 1]),
        method="golden",
        tol=1e-10,
    )
    log_s = float(result.x) if result.fun <= values[j] else float(log_grid[j])
    r_star = r_one - math.exp(log_s)
    witness = _f(sys, r_star)
    g = -r_star / math.sqrt(witness)

    n_star = math.floor(g) + 1
    while not n_star * math.sqrt(witness) > -r_star:
        n_star += 1
    logger.info("kv cutoff: n_star=%d at r_star=%.6g (f=%.6g)", n_star, r_star, witness)
    return KvCutoff(
        n_star=n_star, r_star=r_star, witness=witness, zero_crossing=r_one, objective=g
    )


def _nonreal_count(sys: EquationSystem, n: int, im_tol: float, root_tol: float) -> int:
    poly = clear_denominators(sys.mode(n))
    return count_nonreal(poly, im_tol, roots=all_roots(poly, root_tol))


def _require_discrete(sys: EquationSystem) -> None:
    if not is_discrete(sys.measure):
        msg = "the oracle sweep needs a discrete measure"
        raise UnsupportedError(msg, hypothesis="discrete measure")


def exact_min_n(
    sys: EquationSystem,
    n_star: int,
    im_tol: float = DEFAULT_IM_TOL,
    root_tol: float = DEFAULT_ROOT_TOL,
) -> int:
    """Smallest n0 <= n_star such that every H_n, n0 <= n <= n_star, has only real zeros."""
    _require_kv(sys)
    _require_discrete(sys)
    if _nonreal_count(sys, n_star, im_tol, root_tol):
        msg = f"H_{n_star} has non-real zeros although n_star={n_star} is a proven cutoff"
        raise InvariantError(msg)
    n0 = n_star
    while n0 > 1 and _nonreal_count(sys, n0 - 1, im_tol, root_tol) == 0:
        n0 -= 1
    return n0


def nonreal_modes(
    sys: EquationSystem,
    n_star: int,
    im_tol: float = DEFAULT_IM_TOL,
    root_tol: float = DEFAULT_ROOT_TOL,
    threads: int | None = None,
) -> list[int]:
    """Modes n < n_star whose H_n has a non-real pair, by oracle count."""
    _require_kv(sys)
    _require_discrete(sys)
    n_values = list(range(1, n_star))
    counts = map_modes(lambda n: _nonreal_count(sys, n, im_tol, root_tol), n_values, threads)
    return [n for n, count in zip(n_values, counts, strict=True) if count]
