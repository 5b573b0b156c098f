from __future__ import annotations

import re
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

from gp_spectra.chareq import EquationSystem, load_system
from gp_spectra.config import SliceOptions, Tolerances

_RANGE = re.compile(r"^\s*(\d+)\s*\.\.\s*(\d+)\s*$")


class RunConfig(BaseModel):
    """Everything one CLI invocation needs, validated up front."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    system: EquationSystem

    n_values: tuple[int, ...] = Field(min_length=1)
    """Mode indices, ascending and unique."""

    output: Literal["csv", "json"] = "csv"
    plot: Literal["svg"] | None = None
    tolerances: Tolerances = Field(default_factory=Tolerances)

    threads: int | None = Field(default=None, ge=1)
    """Overrides `SPECTRA_THREADS`."""

    force_method: Literal["dw"] | None = None
    seed: int | None = None
    """Recorded for reproducible randomised runs; the computations themselves are deterministic."""

    @field_validator("n_values")
    @classmethod
    def check_n_values(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if any(n < 1 for n in value):
            msg = f"mode indices must be >= 1, got {value}"
            raise ValueError(msg)
        if list(value) != sorted(set(value)):
            msg = "mode indices must be ascending and unique"
            raise ValueError(msg)
        return value

    @property
    def slice_options(self) -> SliceOptions:
        return SliceOptions(tolerances=self.tolerances, force_method=self.force_method)


def parse_n_values(text: str) -> tuple[int, ...]:
    """`a..b` (inclusive), a comma-separated list or a single index, sorted and deduplicated."""
    if match := _RANGE.match(text):
        lo, hi = int(match.group(1)), int(match.group(2))
        if lo > hi:
            msg = f"empty mode range {text!r}"
            raise ValueError(msg)
        return tuple(range(lo, hi + 1))
    try:
        values = {int(part) for part in text.split(",") if part.strip()}
    except ValueError as e:
        msg = f"cannot parse mode list {text!r}; use a..b or n1,n2,..."
        raise ValueError(msg) from e
    if not values:
        msg = "no mode index given"
        raise ValueError(msg)
    return tuple(sorted(values))


def read_system(path: str | Path) -> EquationSystem:
    return load_system(Path(path).read_text())
