"""Real zeros of discrete-measure characteristic functions and their pole-free intervals."""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.optimize import brentq

from gp_spectra.chareq import CharacteristicFn
from gp_spectra.config import EquationKind
from gp_spectra.errors import DomainError
from gp_spectra.logging import logger
from gp_spectra.measure import as_discrete, inv_moment, power_law_parts, support_max, total_mass

POSITIVE_INTERVAL = -1
GRID_POINTS = 400


class RealZero(BaseModel):
    """A real zero x and the interval I_k holding it.

    k = 0 is (-b_1, 0), k = 1..N-1 is (-b_{k+1}, -b_k), k = N is (-inf, -b_N)
    and k = -1 is [0, inf). Infinite bounds are None.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    value: float
    interval: int
    lower: float | None
    upper: float | None


def bracket(x: float, locations: Sequence[float]) -> RealZero:
    """Attach the interval index of `x` for atoms at the increasing `locations`."""
    if x >= 0:
        return RealZero(value=x, interval=POSITIVE_INTERVAL, lower=0.0, upper=None)
    if any(x == -b for b in locations):
        msg = f"{x} coincides with a pole"
        raise DomainError(msg, z=complex(x))
    k = sum(1 for b in locations if -b > x)
    lower = -locations[k] if k < len(locations) else None
    upper = -locations[k - 1] if k >= 1 else 0.0
    return RealZero(value=x, interval=k, lower=lower, upper=upper)


def search_radius(cf: CharacteristicFn) -> float:
    """A radius enclosing every zero of `cf`, used for real scans and large boxes."""
    m = cf.system.measure
    scalars = [1.0]
    for value in (total_mass(m), inv_moment(m)):
        if math.isfinite(value):
            scalars.append(value)
    if cf.kind is EquationKind.GP2:
        scalars.append(cf.a)
    radius = 4 * cf.n * math.sqrt(max(scalars)) + 1.0
    b_max = support_max(m)
    if math.isfinite(b_max):
        radius += b_max
    if cf.kind is EquationKind.KV:
        radius += 2 * cf.epsilon * cf.n2
    for pl in power_law_parts(m):
        radius += 4 * (pl.transform_coefficient * cf.n2) ** (1 / (2 - pl.rho))
    return radius


def _clustered(lower: float, upper: float, points: int) -> np.ndarray:
    # Chebyshev spacing, dense next to both (excluded) ends
    theta = np.pi * np.arange(1, points) / points
    return lower + (upper - lower) * (1 - np.cos(theta)) / 2


def _real_value(cf: CharacteristicFn, x: float) -> float:
    return cf.eval(complex(x))[0].real


def real_zero_scan(cf: CharacteristicFn, points: int = GRID_POINTS) -> list[RealZero]:
    """Real zeros of `cf` by a sign-change scan on each pole-free interval, polished with brentq.

    Zeros of even multiplicity are not detected.
    """
    locations = list(as_discrete(cf.system.measure).locations)
    radius = search_radius(cf)
    poles = [-b for b in reversed(locations)]

    # I_N cut at -radius, the bounded I_k, then I_0 and [0, radius]; only pole ends are open
    grids = [np.concatenate([[-radius], _clustered(-radius, poles[0], points)])]
    grids += [_clustered(lo, hi, points) for lo, hi in zip(poles, poles[1:], strict=False)]
    grids.append(np.concatenate([_clustered(poles[-1], 0.0, points), [0.0]]))
    grids.append(np.concatenate([[0.0], _clustered(0.0, radius, points), [radius]]))

    zeros: list[float] = []
    for grid in grids:
        zeros.extend(_scan(cf, grid))

    result = [bracket(x, locations) for x in sorted(set(zeros))]
    logger.debug("n=%d: real zeros %s", cf.n, [z.value for z in result])
    return result


def _scan(cf: CharacteristicFn, grid: np.ndarray) -> list[float]:
    values = [_real_value(cf, float(x)) for x in grid]
    found = [float(x) for x, v in zip(grid, values, strict=True) if v == 0]
    for j in range(len(grid) - 1):
        if values[j] * values[j + 1] < 0:
            root = brentq(
                lambda x: _real_value(cf, x),
                float(grid[j]),
                float(grid[j + 1]),
                xtol=1e-300,
                rtol=4 * np.finfo(float).eps,
            )
            found.append(float(root))
    return found
