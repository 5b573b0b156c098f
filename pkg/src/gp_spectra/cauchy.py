"""Cauchy transform K(z) = ∫ dμ(t) / (z + t) of a measure, i.e. the Laplace transform of k."""

from __future__ import annotations

import cmath
import math

import numpy as np
from pydantic import BaseModel, ConfigDict

from gp_spectra.errors import DomainError, UnsupportedError
from gp_spectra.measure import (
    Discrete,
    Measure,
    PowerLaw,
    differentiate_kernel,
    power_law_parts,
    total_mass,
)

DEFAULT_POLE_GUARD = 1e-13
DEFAULT_SECTOR_DELTA = 0.01


class TransformValue(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    value: complex
    derivative: complex
    """dK/dz."""

    domain_ok: bool
    """False when z lies on the closed negative real ray.

    Discrete transforms extend there (off the poles); the general theory does not.
    """


def _on_negative_ray(z: complex) -> bool:
    return z.imag == 0 and z.real <= 0


def _eval_discrete(m: Discrete, z: complex, guard: float) -> tuple[complex, complex]:
    masses = np.asarray(m.masses)
    shifted = z + np.asarray(m.locations)
    distance = np.abs(shifted)
    tolerance = guard * (1 + abs(z))
    hit = int(np.argmin(distance))
    if distance[hit] < tolerance:
        msg = f"z={z} is within {tolerance:.3g} of the pole at -b_{hit + 1}={-m.atoms[hit].loc}"
        raise DomainError(msg, z=z, atom=hit)
    inv = 1.0 / shifted
    value = complex(np.sum(masses * inv))
    derivative = complex(-np.sum(masses * inv * inv))
    return value, derivative


def _eval_power_law(m: PowerLaw, z: complex, guard: float) -> tuple[complex, complex]:
    tolerance = guard * (1 + abs(z))
    if abs(z) < tolerance or (z.real <= 0 and abs(z.imag) < tolerance):
        msg = f"z={z} is on or within {tolerance:.3g} of the branch cut (-inf, 0]"
        raise DomainError(msg, z=z, cut=True)
    # principal branch: exp((ρ-1)·Log z) is positive on the positive ray
    value = m.transform_coefficient * cmath.exp((m.rho - 1) * cmath.log(z))
    return value, (m.rho - 1) * value / z


def _eval(m: Measure, z: complex, guard: float) -> tuple[complex, complex]:
    if isinstance(m, Discrete):
        return _eval_discrete(m, z, guard)
    if isinstance(m, PowerLaw):
        return _eval_power_law(m, z, guard)
    value, derivative = 0j, 0j
    for part in m.parts:
        v, d = _eval(part, z, guard)
        value += v
        derivative += d
    return value, derivative


def eval_K(
    m: Measure, z: complex, guard: float = DEFAULT_POLE_GUARD
) -> TransformValue:
    """Evaluate K and K' at `z`.

    Raises `DomainError` when `z` is within `guard * (1 + |z|)` of a reflected
    atom `-b_k` or, for power-law parts, of the cut (-inf, 0].
    """
    z = complex(z)
    value, derivative = _eval(m, z, guard)
    return TransformValue(
        value=value, derivative=derivative, domain_ok=not _on_negative_ray(z)
    )


def asymptotic_K(
    m: Measure, z: complex, delta: float = DEFAULT_SECTOR_DELTA
) -> complex:
    """Leading-order model of K(z) for large |z| in the sector |arg z| <= π - delta.

    Finite mass: A/z. Power-law parts contribute their exact closed form, so for a
    pure PowerLaw this equals `eval_K` exactly.
    """
    z = complex(z)
    if z == 0 or abs(cmath.phase(z)) > math.pi - delta:
        msg = f"z={z} is outside the sector |arg z| <= pi - {delta}"
        raise DomainError(msg, z=z, cut=True)

    power_laws = power_law_parts(m)
    finite_part = _finite_mass_part(m)
    if not power_laws and not math.isfinite(finite_part):
        msg = "measure has neither finite mass nor a power-law model"
        raise UnsupportedError(msg, hypothesis="finite total mass or power law")

    value = finite_part / z
    for pl in power_laws:
        value += _eval_power_law(pl, z, DEFAULT_POLE_GUARD)[0]
    return value


def _finite_mass_part(m: Measure) -> float:
    if isinstance(m, Discrete):
        return total_mass(m)
    if isinstance(m, PowerLaw):
        return 0.0
    return sum(_finite_mass_part(p) for p in m.parts)


def sector_bound(m: Measure, r: float, delta: float) -> float:
    """Upper bound for |K(z)| on {|z| = r, |arg z| <= π - delta}.

    Uses |z + t| >= (1/2)(|z| + t)·c with c = min(sin δ, cos δ), so
    |K(z)| <= (2/c) ∫ dμ(t)/(r + t) and the integral is K(r) itself. The sin δ
    factor takes over next to the cut, where |z + t| can shrink to r·sin δ.
    """
    if not 0 < delta < math.pi / 2:
        msg = f"delta must lie in (0, pi/2), got {delta}"
        raise ValueError(msg)
    if not r > 0:
        msg = f"radius must be positive, got {r}"
        raise ValueError(msg)
    constant = min(math.sin(delta), math.cos(delta))
    return 2.0 / constant * eval_K(m, r).value.real


def sign_law_holds(m: Measure, z: complex) -> bool:
    """Im K(z) · Im z < 0 for non-real z."""
    z = complex(z)
    if z.imag == 0:
        msg = "the sign law is stated for non-real z"
        raise ValueError(msg)
    return eval_K(m, z).value.imag * z.imag < 0


def kernel_derivative_residual(m: Measure, z: complex) -> float:
    """Relative residual of K̃(z) = k(0) - z·K(z) where μ̃ = differentiate_kernel(m)."""
    z = complex(z)
    derived = eval_K(differentiate_kernel(m), z).value
    expected = total_mass(m) - z * eval_K(m, z).value
    return abs(derived - expected) / max(abs(expected), abs(derived), 1.0)
