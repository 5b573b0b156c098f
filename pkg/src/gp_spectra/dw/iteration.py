"""Denjoy-Wolff iteration of the upper-half-plane self-map of a mode."""

from __future__ import annotations

import cmath
import math
from enum import StrEnum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from gp_spectra.chareq import (
    CharacteristicFn,
    fixed_point_map,
    is_mobius_degenerate,
    map_derivative,
    single_atom,
)
from gp_spectra.errors import IterationError, SpectraError
from gp_spectra.logging import logger

EPS = 2.220446049250313e-16
DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 10_000
BOUNDARY_FACTOR = 10.0
RATIO_WINDOW = 5
RATIO_CAP = 0.999
TREND_WINDOW = 20


class DwClassification(StrEnum):
    INTERIOR_FIXED_POINT = "InteriorFixedPoint"
    """Geometric convergence to the unique zero in the upper half-plane."""

    BOUNDARY_ATTRACTED = "BoundaryAttracted"
    """Iterates approach the real axis; heuristic, cross-checked by the caller."""

    ELLIPTIC_DEGENERATE = "EllipticDegenerate"
    """Single-atom GP1 with an elliptic Möbius map; solved in closed form."""

    UNDECIDED = "Undecided"
    """Iteration cap reached without a verdict."""


class DwTrace(BaseModel):
    """Trajectory z_{k+1} = f(z_k) of the fixed-point map and its verdict."""

    model_config = ConfigDict(extra="forbid")

    iterates: list[complex] = Field(default_factory=list)
    """z_0, z_1, ... in order; empty for the closed-form degenerate case."""

    classification: DwClassification = DwClassification.UNDECIDED

    fixed_point: complex | None = None
    """The interior fixed point w, when one was found."""

    multiplier: complex | None = None
    """f'(w) at the fixed point."""

    iterations_used: int = 0

    @property
    def last(self) -> complex | None:
        return self.iterates[-1] if self.iterates else None

    @property
    def step_sizes(self) -> list[float]:
        return [abs(b - a) for a, b in zip(self.iterates, self.iterates[1:], strict=False)]

    def contraction_ratios(self) -> list[float]:
        """|z_{k+1} - z_k| / |z_k - z_{k-1}|; tends to |f'(w)| at an interior fixed point."""
        steps = self.step_sizes
        return [
            b / a if a > 0 else 0.0 for a, b in zip(steps, steps[1:], strict=False)
        ]

    def records(self) -> list[dict[str, Any]]:
        """One `{"k", "re", "im"}` record per iterate plus a final classification record."""
        rows: list[dict[str, Any]] = [
            {"k": k, "re": z.real, "im": z.imag} for k, z in enumerate(self.iterates)
        ]
        rows.append(
            {
                "classification": self.classification.value,
                "fixed_point": _complex_record(self.fixed_point),
                "multiplier": _complex_record(self.multiplier),
                "iterations_used": self.iterations_used,
            }
        )
        return rows


def _complex_record(z: complex | None) -> dict[str, float] | None:
    return None if z is None else {"re": z.real, "im": z.imag}


def _noise_floor(z: complex) -> float:
    return 64 * EPS * (1 + abs(z))


def _geometric(trace: DwTrace, steps: list[float]) -> float | None:
    """Largest step ratio over the last window, or None if not contracting."""
    if len(steps) < RATIO_WINDOW + 1:
        return None
    floor = _noise_floor(trace.iterates[-1])
    window = steps[-RATIO_WINDOW - 1 :]
    ratios = [
        0.0 if b < floor else (b / a if a > 0 else math.inf)
        for a, b in zip(window, window[1:], strict=False)
    ]
    q = max(ratios)
    return q if q <= RATIO_CAP else None


def _trending_down(trace: DwTrace) -> bool:
    if len(trace.iterates) <= TREND_WINDOW:
        return False
    ims = [z.imag for z in trace.iterates[-TREND_WINDOW - 1 :]]
    return all(b <= a for a, b in zip(ims, ims[1:], strict=False)) and ims[-1] < ims[0]


def _elliptic_trace(cf: CharacteristicFn) -> DwTrace | None:
    atom = single_atom(cf).atoms[0]
    # z² + b z + n²a = 0 after clearing the single pole
    discriminant = atom.loc**2 - 4 * cf.n2 * atom.mass
    if discriminant >= 0:
        return None
    w = complex(-atom.loc / 2, math.sqrt(-discriminant) / 2)
    multiplier = cf.n2 * atom.mass / (w + atom.loc) ** 2
    logger.info("n=%d: elliptic Möbius map, closed-form fixed point %s", cf.n, w)
    return DwTrace(
        classification=DwClassification.ELLIPTIC_DEGENERATE,
        fixed_point=w,
        multiplier=multiplier,
    )


def iterate(
    cf: CharacteristicFn,
    z0: complex = 1j,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
) -> DwTrace:
    """Iterate the fixed-point map of `cf` from `z0` and classify the orbit.

    Interior convergence needs a step below `tol·(1 + |z|)`, a sustained
    geometric contraction over the last steps, an estimated distance to the
    limit smaller than half of Im z, and `|f'(w)| < 1`. Approach to the real
    axis is reported once Im z drops below `10·tol` with a decreasing trend.

    Raises `IterationError` (carrying the trace so far) when the map fails.
    """
    z0 = complex(z0)
    if not z0.imag > 0:
        msg = f"z0 must lie in the upper half-plane, got {z0}"
        raise ValueError(msg)
    if max_iter < 1 or not tol > 0:
        msg = f"need max_iter >= 1 and tol > 0, got {max_iter}, {tol}"
        raise ValueError(msg)

    if is_mobius_degenerate(cf) and (trace := _elliptic_trace(cf)) is not None:
        return trace

    threshold = BOUNDARY_FACTOR * tol
    trace = DwTrace(iterates=[z0])
    steps: list[float] = []
    z = z0
    for k in range(1, max_iter + 1):
        try:
            z_next = fixed_point_map(cf, z)
        except SpectraError as e:
            trace.iterations_used = k - 1
            if z.imag < threshold and _trending_down(trace):
                logger.warning("n=%d: map failed at the boundary, treating as boundary attracted", cf.n)
                trace.classification = DwClassification.BOUNDARY_ATTRACTED
                return trace
            raise IterationError(trace, e) from e

        trace.iterates.append(z_next)
        trace.iterations_used = k
        steps.append(abs(z_next - z))
        z = z_next

        if z.imag < threshold:
            if _trending_down(trace):
                trace.classification = DwClassification.BOUNDARY_ATTRACTED
                logger.info("n=%d: iterates attracted to the real axis after %d steps", cf.n, k)
                return trace
            continue

        if steps[-1] >= tol * (1 + abs(z)):
            continue
        q = _geometric(trace, steps)
        if q is None or steps[-1] * q / (1 - q) >= z.imag / 2:
            continue

        multiplier = map_derivative(cf, z)
        if abs(multiplier) >= 1:
            logger.warning("n=%d: converged with |f'(w)| = %.6g >= 1", cf.n, abs(multiplier))
            break
        trace.classification = DwClassification.INTERIOR_FIXED_POINT
        trace.fixed_point = z
        trace.multiplier = multiplier
        logger.info(
            "n=%d: interior fixed point %s after %d steps, |f'(w)| = %.3g, arg = %.6g",
            cf.n,
            z,
            k,
            abs(multiplier),
            cmath.phase(z),
        )
        return trace

    logger.info("n=%d: no verdict after %d iterations", cf.n, trace.iterations_used)
    return trace
