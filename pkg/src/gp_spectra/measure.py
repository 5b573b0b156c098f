"""Positive Stieltjes measures defining the memory kernel k(t) = ∫ e^{-tτ} dμ(τ)."""

from __future__ import annotations

import math
from collections import defaultdict
from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter

from gp_spectra.config import ValidationPolicy
from gp_spectra.errors import AssumptionError, MeasureError, UnsupportedError
from gp_spectra.logging import logger


class Atom(BaseModel):
    """A point mass `mass` placed at `loc`."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    mass: float = Field(gt=0, allow_inf_nan=False)
    loc: float = Field(gt=0, allow_inf_nan=False)

    @property
    def location(self) -> float:
        return self.loc


class Discrete(BaseModel):
    """Finitely many atoms; K(z) = Σ a_k / (z + b_k)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    type: Literal["discrete"] = "discrete"
    atoms: tuple[Atom, ...] = Field(min_length=1)

    @classmethod
    def of(cls, *pairs: tuple[float, float]) -> Discrete:
        """Build from `(mass, location)` pairs."""
        return cls(atoms=tuple(Atom(mass=a, loc=b) for a, b in pairs))

    @property
    def masses(self) -> tuple[float, ...]:
        return tuple(atom.mass for atom in self.atoms)

    @property
    def locations(self) -> tuple[float, ...]:
        return tuple(atom.loc for atom in self.atoms)


class PowerLaw(BaseModel):
    """The exact power law μ(t) = b·t^ρ."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    type: Literal["power_law"] = "power_law"
    b: float = Field(gt=0, allow_inf_nan=False)
    rho: float = Field(gt=0, lt=1)

    @property
    def transform_coefficient(self) -> float:
        """bπρ / sin(πρ), the constant in K(z) = c·z^{ρ-1}."""
        return self.b * math.pi * self.rho / math.sin(math.pi * self.rho)


class Sum(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    type: Literal["sum"] = "sum"
    parts: tuple[Measure, ...] = Field(min_length=1)


Measure = Annotated[Discrete | PowerLaw | Sum, Field(discriminator="type")]

Sum.model_rebuild()

_MEASURE_ADAPTER: TypeAdapter[Discrete | PowerLaw | Sum] = TypeAdapter(Measure)


def load_measure(text: str | bytes) -> Measure:
    """Parse the measure JSON (`{"type": "discrete" | "power_law" | "sum", ...}`)."""
    return _MEASURE_ADAPTER.validate_json(text)


def measure_from_dict(data: object) -> Measure:
    return _MEASURE_ADAPTER.validate_python(data)


def dump_measure(m: Measure) -> str:
    return _MEASURE_ADAPTER.dump_json(m).decode()


# Derived scalars


def total_mass(m: Measure) -> float:
    """A = ∫ dμ, possibly infinite. Equals k(0)."""
    if isinstance(m, Discrete):
        return math.fsum(m.masses)
    if isinstance(m, PowerLaw):
        return math.inf
    return sum(total_mass(p) for p in m.parts)


def inv_moment(m: Measure) -> float:
    """∫ dμ(t)/t, finite iff the kernel is integrable on (0, ∞)."""
    if isinstance(m, Discrete):
        return math.fsum(a.mass / a.loc for a in m.atoms)
    if isinstance(m, PowerLaw):
        return math.inf
    return sum(inv_moment(p) for p in m.parts)


def support_min(m: Measure) -> float:
    if isinstance(m, Discrete):
        return min(m.locations)
    if isinstance(m, PowerLaw):
        return 0.0
    return min(support_min(p) for p in m.parts)


def support_max(m: Measure) -> float:
    if isinstance(m, Discrete):
        return max(m.locations)
    if isinstance(m, PowerLaw):
        return math.inf
    return max(support_max(p) for p in m.parts)


def kernel(m: Measure, t: float) -> float:
    """The memory kernel k(t) = ∫ e^{-tτ} dμ(τ), t ≥ 0."""
    if t < 0:
        msg = f"kernel is defined for t >= 0, got {t}"
        raise ValueError(msg)
    if isinstance(m, Discrete):
        return math.fsum(a.mass * math.exp(-t * a.loc) for a in m.atoms)
    if isinstance(m, PowerLaw):
        if t == 0:
            return math.inf
        return m.b * m.rho * math.gamma(m.rho) * t ** (-m.rho)
    return sum(kernel(p, t) for p in m.parts)


def is_discrete(m: Measure) -> bool:
    """True when `m` is Discrete or a Sum made only of discrete parts."""
    if isinstance(m, Discrete):
        return True
    if isinstance(m, PowerLaw):
        return False
    return all(is_discrete(p) for p in m.parts)


def as_discrete(m: Measure) -> Discrete:
    """Flatten `m` into one Discrete, merging atoms that share a location."""
    if isinstance(m, Discrete):
        return m
    if not is_discrete(m):
        msg = "measure has a power-law part and cannot be represented by atoms"
        raise UnsupportedError(msg, hypothesis="discrete measure")

    merged: dict[float, float] = defaultdict(float)

    def _collect(part: Measure) -> None:
        if isinstance(part, Discrete):
            for atom in part.atoms:
                merged[atom.loc] += atom.mass
        elif isinstance(part, Sum):
            for sub in part.parts:
                _collect(sub)

    _collect(m)
    return Discrete.of(*((merged[loc], loc) for loc in sorted(merged)))


def power_law_parts(m: Measure) -> list[PowerLaw]:
    if isinstance(m, PowerLaw):
        return [m]
    if isinstance(m, Discrete):
        return []
    return [pl for p in m.parts for pl in power_law_parts(p)]


def leading_power_law(m: Measure) -> tuple[float, float] | None:
    """(b, ρ) of the dominant growth μ(t) ~ b·t^ρ at infinity, or None.

    Parts of finite mass are O(t^α) for every α > 0 and never dominate.
    """
    parts = power_law_parts(m)
    if not parts:
        return None
    rho = max(p.rho for p in parts)
    b = math.fsum(p.b for p in parts if p.rho == rho)
    return b, rho


def differentiate_kernel(m: Measure) -> Discrete:
    """Measure of k̃ = -dk/dt, i.e. dμ̃(τ) = τ·dμ(τ)."""
    if not is_discrete(m):
        msg = f"differentiate_kernel needs a discrete measure, got {type(m).__name__}"
        raise UnsupportedError(msg, hypothesis="discrete measure")
    d = as_discrete(m)
    return Discrete.of(*((a.mass * a.loc, a.loc) for a in d.atoms))


# Validation


class ValidationReport(BaseModel):
    """Which standing assumptions hold for a measure."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    integrable: bool
    """∫ dμ(t)/t < ∞."""

    positive_support: bool
    """inf supp μ > 0."""

    finite_mass: bool
    """A = ∫ dμ < ∞; needed by the finite-mass asymptotics."""

    compact_support: bool
    """supp μ ⊂ [d_0, d] with 0 < d_0 < d < ∞; needed by the Kelvin-Voigt cutoff."""

    policy: ValidationPolicy
    warnings: tuple[str, ...] = ()

    @property
    def admissible(self) -> bool:
        return self.policy is ValidationPolicy.ASYMPTOTIC_MODEL or (
            self.integrable and self.positive_support
        )


def _check_structure(m: Measure) -> None:
    if isinstance(m, Discrete):
        if not m.atoms:
            msg = "discrete measure needs at least one atom"
            raise MeasureError(msg)
        for k, atom in enumerate(m.atoms):
            if not atom.mass > 0 or not atom.loc > 0:
                msg = f"atom {k} must have positive mass and location, got {atom}"
                raise MeasureError(msg)
        locs = m.locations
        for k in range(1, len(locs)):
            if not locs[k] > locs[k - 1]:
                msg = (
                    f"atom locations must be strictly increasing: "
                    f"b_{k} = {locs[k - 1]} >= b_{k + 1} = {locs[k]}"
                )
                raise MeasureError(msg)
    elif isinstance(m, PowerLaw):
        if not (m.b > 0 and 0 < m.rho < 1):
            msg = f"power law needs b > 0 and 0 < rho < 1, got b={m.b}, rho={m.rho}"
            raise MeasureError(msg)
    else:
        if not m.parts:
            msg = "sum measure needs at least one part"
            raise MeasureError(msg)
        for part in m.parts:
            _check_structure(part)


def validate(
    m: Measure,
    policy: ValidationPolicy | str = ValidationPolicy.STRICT,
) -> ValidationReport:
    """Check the structure of `m` and report which standing assumptions hold.

    Structural problems always raise `MeasureError`. Under the strict policy a
    failure of integrability or of support bounded away from 0 raises
    `AssumptionError`; under the asymptotic-model policy they are only warned about.
    Finite mass and compact support are only reported.
    """
    policy = ValidationPolicy.from_string(policy)
    _check_structure(m)

    lo, hi = support_min(m), support_max(m)
    report_fields = {
        "integrable": math.isfinite(inv_moment(m)),
        "positive_support": lo > 0,
        "finite_mass": math.isfinite(total_mass(m)),
        "compact_support": lo > 0 and math.isfinite(hi),
    }
    failed = [
        name for name in ("integrable", "positive_support") if not report_fields[name]
    ]
    if failed and policy is ValidationPolicy.STRICT:
        msg = f"measure violates standing assumptions: {', '.join(failed)}"
        logger.error(msg)
        raise AssumptionError(msg, failed)

    warnings = tuple(f"{name} waived under {policy.value} policy" for name in failed)
    for warning in warnings:
        logger.warning(warning)

    return ValidationReport(policy=policy, warnings=warnings, **report_fields)
