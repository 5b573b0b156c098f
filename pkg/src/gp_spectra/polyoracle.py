"""Exact finite-dimensional oracle for discrete measures.

Clearing the N poles of K turns F_n, G_n and H_n into real polynomials of degree
N+1 (GP1) or N+2 (GP2, KV); all their roots are found by Aberth-Ehrlich
simultaneous iteration, independently of the fixed-point machinery.
"""

from __future__ import annotations

import math

import numpy as np
from pydantic import BaseModel, ConfigDict

from gp_spectra.chareq import CharacteristicFn
from gp_spectra.config import EquationKind
from gp_spectra.errors import AmbiguousCountError, InvariantError, NoConvergenceError
from gp_spectra.logging import logger
from gp_spectra.measure import as_discrete

EPS = float(np.finfo(float).eps)
DEFAULT_ROOT_TOL = 1e-12
DEFAULT_IM_TOL = 1e-9
ABERTH_MAX_ITER = 500
_CHECK_POINTS = 16
_CHECK_TOL = 1e-10
_PAIR_TOL = 1e-6


class ClearedPolynomial(BaseModel):
    """P(z) = cf(z)·Π_k (z + b_k) with real coefficients, highest degree first."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    coefficients: tuple[float, ...]
    equation: EquationKind
    n: int
    locations: tuple[float, ...]
    """The atom locations b_k whose poles were cleared."""

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.coefficients, dtype=float)

    def __call__(self, z: complex | np.ndarray) -> complex | np.ndarray:
        return np.polyval(self.array, z)

    def scale(self, z: complex | np.ndarray) -> float | np.ndarray:
        """Σ |c_k| |z|^k, the natural size of P(z) for backward-error residuals."""
        return np.polyval(np.abs(self.array), np.abs(z))

    def residual(self, z: complex | np.ndarray) -> float | np.ndarray:
        return _residual(self.array, z)


def _product(roots: np.ndarray) -> np.ndarray:
    """Monic polynomial Π (z - r) by successive pairwise multiplication."""
    poly = np.array([1.0])
    for r in roots:
        poly = np.polymul(poly, np.array([1.0, -r]))
    return poly


def clear_denominators(cf: CharacteristicFn) -> ClearedPolynomial:
    """Expand cf(z)·Π(z + b_k) for a discrete measure.

    Raises `UnsupportedError` for measures with a power-law part.
    """
    measure = as_discrete(cf.system.measure)
    masses = np.asarray(measure.masses)
    locations = np.asarray(measure.locations)
    n2 = cf.n2

    full = _product(-locations)
    # Σ a_k Π_{j≠k}(z + b_j)
    partial = np.zeros(len(locations))
    for k, a_k in enumerate(masses):
        partial = np.polyadd(partial, a_k * _product(np.delete(-locations, k)))

    match cf.kind:
        case EquationKind.GP1:
            coefficients = np.polyadd(np.polymul([1.0, 0.0], full), n2 * partial)
        case EquationKind.GP2:
            coefficients = np.polysub(np.polymul([1.0, 0.0, cf.a * n2], full), n2 * partial)
        case EquationKind.KV:
            coefficients = np.polysub(
                np.polymul([1.0, cf.epsilon * n2, n2], full), n2 * partial
            )

    poly = ClearedPolynomial(
        coefficients=tuple(float(c) for c in coefficients),
        equation=cf.kind,
        n=cf.n,
        locations=tuple(float(b) for b in locations),
    )
    _check_expansion(cf, poly, masses, locations)
    return poly


def _check_expansion(
    cf: CharacteristicFn,
    poly: ClearedPolynomial,
    masses: np.ndarray,
    locations: np.ndarray,
) -> None:
    expected_degree = len(locations) + (1 if cf.kind is EquationKind.GP1 else 2)
    if poly.degree != expected_degree:
        msg = f"cleared polynomial has degree {poly.degree}, expected {expected_degree}"
        raise InvariantError(msg)

    # compare with direct rational evaluation off the real axis
    radius = 1.0 + float(np.max(locations)) + math.sqrt(cf.n2)
    angles = (np.arange(_CHECK_POINTS) + 0.5) * np.pi / _CHECK_POINTS
    for z in radius * np.exp(1j * angles):
        direct = cf.eval(complex(z))[0] * complex(np.prod(z + locations))
        if abs(poly(z) - direct) > _CHECK_TOL * float(poly.scale(z)):
            msg = f"polynomial expansion disagrees with rational evaluation at z={z}"
            raise InvariantError(msg)

    # an atom location is never a root: P(-b_k) = ±n² a_k Π_{j≠k}(b_j - b_k)
    sign = 1.0 if cf.kind is EquationKind.GP1 else -1.0
    for k, (a_k, b_k) in enumerate(zip(masses, locations, strict=True)):
        expected = sign * cf.n2 * a_k * float(np.prod(np.delete(locations, k) - b_k))
        if expected == 0 or abs(poly(-b_k) - expected) > 1e-9 * float(poly.scale(-b_k)):
            msg = f"P(-b_{k + 1}) does not match the residue of the cleared pole"
            raise InvariantError(msg)


def _aberth(coefficients: np.ndarray, tol: float, max_iter: int) -> np.ndarray:
    c = coefficients / coefficients[0]
    degree = len(c) - 1
    dc = np.polyder(c)

    # Cauchy bound for the initial circle; offset avoids conjugate-symmetric seeds
    radius = 1.0 + float(np.max(np.abs(c[1:])))
    angles = 2 * np.pi * np.arange(degree) / degree + 0.4
    z = radius * np.exp(1j * angles)

    for _ in range(max_iter):
        p = np.polyval(c, z)
        dp = np.polyval(dc, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(p == 0, 0, p / dp)
            repulsion = np.sum(1.0 / diff, axis=1)
            step = np.where(ratio == 0, 0, ratio / (1 - ratio * repulsion))
        step = np.nan_to_num(step, nan=0.0, posinf=0.0, neginf=0.0)
        z = z - step
        if np.all(np.abs(step) <= 4 * EPS * np.maximum(np.abs(z), 1.0)):
            break
        if np.all(np.abs(p) <= tol * np.polyval(np.abs(c), np.abs(z)) * EPS):
            break
    return z


def _residual(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    scale = np.maximum(np.polyval(np.abs(c), np.abs(z)), np.finfo(float).tiny)
    return np.abs(np.polyval(c, z)) / scale


def _polish(c: np.ndarray, z: np.ndarray, steps: int = 3) -> np.ndarray:
    dc = np.polyder(c)
    for _ in range(steps):
        with np.errstate(divide="ignore", invalid="ignore"):
            candidate = z - np.polyval(c, z) / np.polyval(dc, z)
        better = np.isfinite(candidate) & (_residual(c, candidate) < _residual(c, z))
        z = np.where(better, candidate, z)
    return z


def _pair_conjugates(roots: np.ndarray) -> list[complex]:
    snapped = [
        complex(r.real, 0.0) if abs(r.imag) <= 1e3 * EPS * (1 + abs(r)) else complex(r)
        for r in roots
    ]
    upper = sorted((r for r in snapped if r.imag > 0), key=lambda r: -r.imag)
    lower = [r for r in snapped if r.imag < 0]
    result = [r for r in snapped if r.imag == 0]

    for u in upper:
        if lower:
            j = min(range(len(lower)), key=lambda i: abs(u - lower[i].conjugate()))
            if abs(u - lower[j].conjugate()) <= _PAIR_TOL * (1 + abs(u)):
                mean = (u + lower.pop(j).conjugate()) / 2
                result.extend([mean, mean.conjugate()])
                continue
        lower.append(u)

    for r in lower:
        if abs(r.imag) > _PAIR_TOL * (1 + abs(r)):
            msg = f"root {r} has no conjugate partner"
            raise InvariantError(msg)
        result.append(complex(r.real, 0.0))
    return result


def all_roots(
    p: ClearedPolynomial,
    tol: float = DEFAULT_ROOT_TOL,
    max_iter: int = ABERTH_MAX_ITER,
) -> list[complex]:
    """All `p.degree` roots, conjugate-paired and sorted by (Im desc, Re asc).

    Exact zero roots (vanishing trailing coefficients, as for H_n with a single
    atom) are factored out first. Raises `NoConvergenceError` carrying the best
    iterates and their residuals when some root misses the relative residual `tol`.
    """
    coefficients = p.array
    if p.degree < 1 or coefficients[0] == 0:
        msg = "all_roots needs degree >= 1 and a nonzero leading coefficient"
        raise ValueError(msg)

    reduced = np.trim_zeros(coefficients, "b")
    zero_roots = len(coefficients) - len(reduced)
    roots = np.zeros(0, dtype=complex)
    if len(reduced) > 1:
        roots = _polish(reduced, _aberth(reduced, tol, max_iter))
        residuals = _residual(reduced, roots)
        if np.any(~np.isfinite(roots)) or np.any(residuals > tol):
            msg = f"root finder missed tolerance {tol}: worst residual {np.max(residuals):.3g}"
            logger.error(msg)
            raise NoConvergenceError(msg, last_iterate=roots.tolist(), residuals=residuals.tolist())

    paired = _pair_conjugates(roots) + [0j] * zero_roots
    logger.debug("%s n=%d: roots %s", p.equation.value, p.n, paired)
    return sorted(paired, key=lambda r: (-r.imag, r.real))


def count_nonreal(
    p: ClearedPolynomial,
    im_tol: float = DEFAULT_IM_TOL,
    roots: list[complex] | None = None,
    tol: float = DEFAULT_ROOT_TOL,
) -> int:
    """Number of roots with |Im z| > im_tol·(1 + |z|).

    Raises `AmbiguousCountError` when a root sits in [0.1, 1]·band.
    """
    if roots is None:
        roots = all_roots(p, tol)
    ambiguous = []
    count = 0
    for r in roots:
        band = im_tol * (1 + abs(r))
        if abs(r.imag) > band:
            count += 1
        elif abs(r.imag) >= 0.1 * band:
            ambiguous.append(r)
    if ambiguous:
        msg = f"roots {ambiguous} are too close to the real axis to classify at im_tol={im_tol}"
        raise AmbiguousCountError(msg, ambiguous)
    if count % 2:
        msg = f"odd non-real root count {count} for a real polynomial"
        raise InvariantError(msg)
    return count


def is_real_root(z: complex, im_tol: float = DEFAULT_IM_TOL) -> bool:
    return abs(z.imag) <= im_tol * (1 + abs(z))
