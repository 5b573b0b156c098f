import os
from enum import StrEnum, auto
from typing import Literal, Self

from pydantic import BaseModel, ConfigDict, Field

THREADS_ENV_VAR = "SPECTRA_THREADS"


class CaseInsensitiveStrEnum(StrEnum):
    @classmethod
    def from_string(cls, value: str | Self) -> Self:
        if isinstance(value, cls):
            return value

        formatted_value = value.strip().upper().replace("-", "_")
        if formatted_value not in cls.__members__:
            error_message = (
                f"Unsupported {cls.__name__}: '{value}'. "
                f"Valid values are: {[m.value for m in cls]}"
            )
            raise ValueError(error_message)

        return cls[formatted_value]


class EquationKind(CaseInsensitiveStrEnum):
    GP1 = auto()
    GP2 = auto()
    KV = auto()


class ValidationPolicy(CaseInsensitiveStrEnum):
    STRICT = auto()
    """Integrability and positive support are enforced."""

    ASYMPTOTIC_MODEL = auto()
    """Integrability and positive support are waived; needed for pure power-law measures."""


class Tolerances(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    root_tol: float = Field(default=1e-12, gt=0)
    """Relative residual required of every root (oracle and Newton)."""

    im_tol: float = Field(default=1e-9, gt=0)
    """Relative imaginary part below which an oracle root counts as real."""

    dw_tol: float = Field(default=1e-12, gt=0)
    """Step size at which the fixed-point iteration is considered converged."""

    dw_max_iter: int = Field(default=10_000, ge=1)
    """Iteration cap of the fixed-point iteration."""

    newton_max_iter: int = Field(default=100, ge=1)

    pole_guard: float = Field(default=1e-13, gt=0)
    """Relative distance to a pole or the branch cut below which evaluation is refused.

    The absolute guard is `pole_guard * (1 + |z|)`.
    """


class SliceOptions(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    tolerances: Tolerances = Field(default_factory=Tolerances)

    force_method: Literal["dw"] | None = None
    """Force the fixed-point/Newton/certificate path even for discrete measures."""

    validation_policy: ValidationPolicy = ValidationPolicy.ASYMPTOTIC_MODEL


def default_threads() -> int:
    """Worker count from `SPECTRA_THREADS`, falling back to the CPU count."""
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return max(1, os.cpu_count() or 1)
