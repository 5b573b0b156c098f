from __future__ import annotations

from gp_spectra.chareq import CharacteristicFn
from gp_spectra.errors import DomainError, NoConvergenceError
from gp_spectra.logging import logger

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 100
MAX_HALVINGS = 60


def _residual(cf: CharacteristicFn, z: complex, value: complex) -> float:
    return abs(value) / cf.scale(z)


def newton_refine(
    cf: CharacteristicFn,
    z0: complex,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> complex:
    """Polish a zero of `cf` in the closed upper half-plane by damped Newton steps.

    Stops once |cf(z)| < tol·scale(z). A step that leaves the half-plane or lands
    on a pole is halved until it does not.

    Raises `NoConvergenceError` with the last iterate after `max_iter` steps.
    """
    z = complex(z0)
    value, derivative = cf.eval(z)
    residual = _residual(cf, z, value)
    if residual < tol:
        return z

    for k in range(max_iter):
        if derivative == 0:
            msg = f"zero derivative at {z}"
            raise NoConvergenceError(msg, last_iterate=z, residuals=[residual])

        step = value / derivative
        for _ in range(MAX_HALVINGS):
            candidate = z - step
            if candidate.imag >= 0:
                try:
                    candidate_value, candidate_derivative = cf.eval(candidate)
                except DomainError:
                    pass
                else:
                    break
            step /= 2
        else:
            msg = f"could not find an admissible Newton step from {z}"
            raise NoConvergenceError(msg, last_iterate=z, residuals=[residual])

        z, value, derivative = candidate, candidate_value, candidate_derivative
        residual = _residual(cf, z, value)
        if residual < tol:
            logger.debug("n=%d: Newton converged to %s in %d steps", cf.n, z, k + 1)
            return z

    msg = f"Newton did not reach residual {tol} in {max_iter} steps (last {residual:.3g})"
    logger.error(msg)
    raise NoConvergenceError(msg, last_iterate=z, residuals=[residual])
