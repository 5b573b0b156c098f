"""Leading-order formulas for the non-real zeros at large n, and a harness comparing them."""

from __future__ import annotations

import cmath
import math
from typing import TYPE_CHECKING

from pydantic import BaseModel, ConfigDict

from gp_spectra.config import CaseInsensitiveStrEnum, EquationKind, SliceOptions
from gp_spectra.errors import UnsupportedError
from gp_spectra.logging import logger
from gp_spectra.measure import leading_power_law, total_mass

from .parallel import map_modes
from .slice import SliceStatus, compute_slice

if TYPE_CHECKING:
    from collections.abc import Sequence

    from gp_spectra.chareq import EquationSystem

NOISE_FLOOR = 1e-10


class Formula(CaseInsensitiveStrEnum):
    INSTANTANEOUS = "instantaneous"
    """GP2: z_n = i√a·n + o(n)."""

    FINITE_MASS = "finite_mass"
    """GP1 with finite mass A: z_n = i√A·n + o(n)."""

    POWER_LAW = "power_law"
    """GP1 with μ(t) ~ b·t^ρ: z_n = (bπρ/sin πρ)^{1/(2-ρ)} e^{iπ/(2-ρ)} n^{2/(2-ρ)}."""

    POWER_LAW_CORRECTED = "power_law_corrected"
    """GP2 with μ(t) ~ b·t^ρ: i√a·n plus a correction of order n^ρ."""


class AsymptoticPrediction(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int
    predicted: complex
    formula: Formula
    expected_error_exponent: float | None = None
    """Exponent of the relative error n^{2(α-ρ)/(2-ρ)} when the remainder exponent α is known."""

    leading: complex | None = None
    """i√a·n for the corrected power-law formula."""

    correction: complex | None = None
    """The n^ρ term of the corrected power-law formula."""


def default_formula(sys: EquationSystem) -> Formula:
    """The sharpest formula whose hypotheses `sys` satisfies."""
    power_law = leading_power_law(sys.measure) is not None
    match sys.kind:
        case EquationKind.GP2:
            return Formula.POWER_LAW_CORRECTED if power_law else Formula.INSTANTANEOUS
        case EquationKind.GP1:
            return Formula.POWER_LAW if power_law else Formula.FINITE_MASS
    msg = "no asymptotic formula is available for kv"
    raise UnsupportedError(msg, hypothesis="equation gp1 or gp2")


def _require(condition: bool, formula: Formula, hypothesis: str) -> None:
    if not condition:
        msg = f"formula {formula.value} needs {hypothesis}"
        raise UnsupportedError(msg, hypothesis=hypothesis)


def predict(
    sys: EquationSystem,
    n: int,
    formula: Formula | str | None = None,
    alpha: float | None = None,
) -> AsymptoticPrediction:
    """Predicted upper-half-plane zero of mode `n`.

    `alpha` is the exponent of the remainder μ(t) - b·t^ρ = O(t^α); it is only
    used for the error exponent of the GP1 power-law formula.

    Raises `UnsupportedError` naming the failed hypothesis when `formula` does not
    apply to `sys`.
    """
    formula = default_formula(sys) if formula is None else Formula.from_string(formula)
    if n < 1:
        msg = f"n must be >= 1, got {n}"
        raise ValueError(msg)

    match formula:
        case Formula.INSTANTANEOUS:
            _require(sys.kind is EquationKind.GP2, formula, "equation gp2")
            assert sys.a is not None
            return AsymptoticPrediction(n=n, predicted=1j * math.sqrt(sys.a) * n, formula=formula)

        case Formula.FINITE_MASS:
            _require(sys.kind is EquationKind.GP1, formula, "equation gp1")
            mass = total_mass(sys.measure)
            _require(math.isfinite(mass), formula, "finite total mass A")
            return AsymptoticPrediction(n=n, predicted=1j * math.sqrt(mass) * n, formula=formula)

        case Formula.POWER_LAW:
            _require(sys.kind is EquationKind.GP1, formula, "equation gp1")
            leading = leading_power_law(sys.measure)
            _require(leading is not None, formula, "power-law measure")
            assert leading is not None
            b, rho = leading
            c = b * math.pi * rho / math.sin(math.pi * rho)
            modulus = c ** (1 / (2 - rho)) * n ** (2 / (2 - rho))
            exponent = None
            if alpha is not None:
                if not alpha < rho:
                    msg = f"remainder exponent alpha={alpha} must be below rho={rho}"
                    raise ValueError(msg)
                exponent = 2 * (alpha - rho) / (2 - rho)
            return AsymptoticPrediction(
                n=n,
                predicted=cmath.rect(modulus, math.pi / (2 - rho)),
                formula=formula,
                expected_error_exponent=exponent,
            )

        case Formula.POWER_LAW_CORRECTED:
            _require(sys.kind is EquationKind.GP2, formula, "equation gp2")
            leading = leading_power_law(sys.measure)
            _require(leading is not None, formula, "power-law measure")
            assert leading is not None and sys.a is not None
            b, rho = leading
            main = 1j * math.sqrt(sys.a) * n
            modulus = correction_modulus(b, rho, sys.a) * n**rho
            correction = cmath.rect(modulus, math.pi * (rho / 2 - 1))
            return AsymptoticPrediction(
                n=n,
                predicted=main + correction,
                formula=formula,
                leading=main,
                correction=correction,
            )


def correction_modulus(b: float, rho: float, a: float) -> float:
    """bπρ / (2 sin πρ) · a^{ρ/2 - 1}."""
    return b * math.pi * rho / (2 * math.sin(math.pi * rho)) * a ** (rho / 2 - 1)


class AsymptoticRow(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int
    computed: complex | None
    """None marks a gap: the slice was inconclusive or had no non-real zero."""

    predicted: complex
    rel_error: float | None
    correction_ratio: float | None = None
    """|w_n - i√a·n| / (c·n^ρ) for the corrected power-law formula."""

    correction_arg: float | None = None
    """arg(w_n - i√a·n) for the corrected power-law formula."""


class AsymptoticsReport(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    formula: Formula
    rows: tuple[AsymptoticRow, ...]
    monotone: bool
    """Errors decrease along n (for the corrected formula, |ratio - 1| does)."""

    complete: bool
    """False when some row is a gap."""


def _decreasing(errors: Sequence[float]) -> bool:
    return all(
        later < earlier or later <= NOISE_FLOOR
        for earlier, later in zip(errors, errors[1:], strict=False)
    )


def verify_asymptotics(
    sys: EquationSystem,
    n_list: Sequence[int],
    formula: Formula | str | None = None,
    alpha: float | None = None,
    opts: SliceOptions | None = None,
    threads: int | None = None,
) -> AsymptoticsReport:
    """Compare computed zeros with `predict` along `n_list`.

    Inconclusive slices leave gaps; the monotone flag is judged on the rows that exist.
    """
    formula = default_formula(sys) if formula is None else Formula.from_string(formula)
    n_values = sorted(set(n_list))
    predictions = [predict(sys, n, formula, alpha) for n in n_values]
    slices = map_modes(lambda n: compute_slice(sys, n, opts), n_values, threads)

    rows = []
    for prediction, slice_ in zip(predictions, slices, strict=True):
        w = slice_.w if slice_.status is SliceStatus.OK else None
        if w is None:
            logger.warning("n=%d: no computed zero to compare", slice_.n)
            rows.append(AsymptoticRow(n=slice_.n, computed=None, predicted=prediction.predicted, rel_error=None))
            continue
        row = AsymptoticRow(
            n=slice_.n,
            computed=w,
            predicted=prediction.predicted,
            rel_error=abs(w - prediction.predicted) / abs(prediction.predicted),
        )
        if prediction.leading is not None and prediction.correction is not None:
            deviation = w - prediction.leading
            row = row.model_copy(
                update={
                    "correction_ratio": abs(deviation) / abs(prediction.correction),
                    "correction_arg": cmath.phase(deviation),
                }
            )
        rows.append(row)

    if formula is Formula.POWER_LAW_CORRECTED:
        errors = [abs(r.correction_ratio - 1) for r in rows if r.correction_ratio is not None]
    else:
        errors = [r.rel_error for r in rows if r.rel_error is not None]
    report = AsymptoticsReport(
        formula=formula,
        rows=tuple(rows),
        monotone=_decreasing(errors),
        complete=all(r.computed is not None for r in rows),
    )
    logger.info("%s: monotone=%s complete=%s", formula.value, report.monotone, report.complete)
    return report
