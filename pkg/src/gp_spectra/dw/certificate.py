"""Argument-principle certificate for the zero count inside a box."""

from __future__ import annotations

import math
from typing import Self

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from gp_spectra.chareq import CharacteristicFn
from gp_spectra.errors import (
    BoundaryTooCloseError,
    DomainError,
    InconclusiveError,
    InvariantError,
)
from gp_spectra.logging import logger

GAUSS_ORDER = 16
PANEL_TOL = 1e-9
MAX_DEPTH = 40
RESIDUAL_LIMIT = 0.1
BOUNDARY_GUARD = 1e-10

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(GAUSS_ORDER)


class Box(BaseModel):
    """Closed rectangle [re_min, re_max] × [im_min, im_max]."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    re_min: float
    re_max: float
    im_min: float
    im_max: float

    @model_validator(mode="after")
    def check_bounds(self) -> Self:
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            msg = f"degenerate box {self}"
            raise ValueError(msg)
        return self

    @classmethod
    def around(cls, center: complex, half_width: float, im_floor: float = 0.0) -> Box:
        """Square box centered at `center`, with its bottom raised to at least `im_floor`."""
        return cls(
            re_min=center.real - half_width,
            re_max=center.real + half_width,
            im_min=max(center.imag - half_width, im_floor),
            im_max=center.imag + half_width,
        )

    @property
    def corners(self) -> tuple[complex, complex, complex, complex]:
        """Counter-clockwise from the lower-left corner."""
        return (
            complex(self.re_min, self.im_min),
            complex(self.re_max, self.im_min),
            complex(self.re_max, self.im_max),
            complex(self.re_min, self.im_max),
        )

    def contains(self, z: complex) -> bool:
        return self.re_min <= z.real <= self.re_max and self.im_min <= z.imag <= self.im_max


class ZeroCertificate(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    box: Box
    winding: int
    """Number of zeros of the characteristic function inside `box`."""

    quadrature_residual: float
    """Distance of the raw winding number to `winding`."""

    evaluations: int = 0


class _SideIntegrator:
    def __init__(self, cf: CharacteristicFn):
        self.cf = cf
        self.evaluations = 0

    def log_derivative(self, z: complex) -> complex:
        try:
            value, derivative = self.cf.eval(z)
        except DomainError as e:
            msg = f"box boundary touches a singularity at {z}"
            raise BoundaryTooCloseError(msg) from e
        self.evaluations += 1
        if abs(value) <= BOUNDARY_GUARD * self.cf.scale(z):
            msg = f"characteristic function vanishes on the box boundary near {z}"
            raise BoundaryTooCloseError(msg)
        return derivative / value

    def panel(self, a: complex, b: complex) -> complex:
        half = (b - a) / 2
        mid = (a + b) / 2
        values = [self.log_derivative(mid + half * x) for x in _NODES]
        return complex(np.dot(_WEIGHTS, values)) * half

    def integrate(self, a: complex, b: complex, whole: complex | None = None, depth: int = 0) -> complex:
        if whole is None:
            whole = self.panel(a, b)
        mid = (a + b) / 2
        left, right = self.panel(a, mid), self.panel(mid, b)
        if abs(left + right - whole) <= PANEL_TOL or depth >= MAX_DEPTH:
            return left + right
        return self.integrate(a, mid, left, depth + 1) + self.integrate(mid, b, right, depth + 1)


def certify_upper_zero(cf: CharacteristicFn, box: Box) -> ZeroCertificate:
    """Count the zeros of `cf` inside `box` with (1/2πi)∮ cf'/cf dz.

    The box must lie in the open upper half-plane, where at most one zero exists.

    Raises `BoundaryTooCloseError` if a zero lies on or next to the boundary and
    `InconclusiveError` if the raw winding number is not within 0.1 of an integer.
    """
    if not box.im_min > 0:
        msg = f"box must lie in the open upper half-plane, got im_min={box.im_min}"
        raise DomainError(msg, z=complex(box.re_min, box.im_min))

    integrator = _SideIntegrator(cf)
    corners = box.corners
    total = sum(
        (integrator.integrate(corners[i], corners[(i + 1) % 4]) for i in range(4)),
        start=0j,
    )
    raw = total / (2j * math.pi)
    winding = round(raw.real)
    residual = abs(raw - winding)
    logger.debug("n=%d: raw winding %s over %s", cf.n, raw, box)

    if residual >= RESIDUAL_LIMIT:
        msg = f"raw winding {raw} is not within {RESIDUAL_LIMIT} of an integer"
        raise InconclusiveError(msg, raw_winding=raw)
    if winding < 0 or winding > 1:
        msg = f"winding {winding} over {box}: the upper half-plane holds at most one zero"
        raise InvariantError(msg)
    return ZeroCertificate(
        box=box,
        winding=winding,
        quadrature_residual=residual,
        evaluations=integrator.evaluations,
    )
