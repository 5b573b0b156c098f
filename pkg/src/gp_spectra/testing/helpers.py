"""Independent oracles and random generators shared by the test-suite."""

from __future__ import annotations

import cmath
import math

import numpy as np

from gp_spectra.chareq import EquationSystem
from gp_spectra.config import EquationKind
from gp_spectra.measure import Discrete

LIGHT_ATOMS = Discrete.of((0.1, 1.0), (0.1, 2.0))
"""k(t) = (e^{-t} + e^{-2t}) / 10."""

HEAVY_ATOMS = Discrete.of((1.0, 1.0), (200.0, 50.0))


def companion_roots(coefficients: list[float]) -> list[complex]:
    """Roots by companion-matrix eigenvalues, highest degree first."""
    return sorted((complex(r) for r in np.roots(coefficients)), key=lambda r: (-r.imag, r.real))


def quadratic_roots(b: float, c: float) -> tuple[complex, complex]:
    """Roots of z² + bz + c, upper one first."""
    root = cmath.sqrt(b * b - 4 * c)
    first, second = (-b + root) / 2, (-b - root) / 2
    return (first, second) if first.imag >= second.imag else (second, first)


def damped_wave_modes(alpha: float, damping: float, n: int) -> tuple[complex, complex]:
    """Zeros of z² + damping·z + n²α², the modes of u_tt = α²u_xx - damping·u_t.

    GP1 with the single atom (α², damping) reduces to this quadratic.
    """
    return quadratic_roots(damping, n * n * alpha * alpha)


def random_discrete(
    rng: np.random.Generator,
    max_atoms: int = 8,
    low: float = 0.1,
    high: float = 10.0,
) -> Discrete:
    """Atoms at well separated random locations in [low, high] with masses in [0.01, 5]."""
    count = int(rng.integers(1, max_atoms + 1))
    while True:
        locations = np.sort(rng.uniform(low, high, size=count))
        if count == 1 or np.min(np.diff(locations)) > 1e-2 * (high - low) / count:
            break
    masses = rng.uniform(0.01, 5.0, size=count)
    return Discrete.of(*((float(a), float(b)) for a, b in zip(masses, locations, strict=True)))


def random_system(rng: np.random.Generator, kind: EquationKind, max_atoms: int = 8) -> EquationSystem:
    measure = random_discrete(rng, max_atoms)
    match kind:
        case EquationKind.GP1:
            return EquationSystem.gp1(measure)
        case EquationKind.GP2:
            return EquationSystem.gp2(measure, a=float(rng.uniform(0.1, 5.0)))
        case EquationKind.KV:
            return EquationSystem.kv(measure, epsilon=float(rng.uniform(0.05, 2.0)))


def random_upper_points(rng: np.random.Generator, count: int, radius: float = 10.0) -> list[complex]:
    """Points of the open upper half-plane, log-uniform in modulus."""
    moduli = np.exp(rng.uniform(math.log(1e-2), math.log(radius), size=count))
    angles = rng.uniform(1e-3, math.pi - 1e-3, size=count)
    return [complex(cmath.rect(float(r), float(t))) for r, t in zip(moduli, angles, strict=True)]
