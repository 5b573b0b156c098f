from __future__ import annotations

from collections import Counter
from typing import Literal

from pydantic import BaseModel, ConfigDict

from gp_spectra.chareq import EquationSystem
from gp_spectra.config import EquationKind
from gp_spectra.errors import InvariantError, UnsupportedError
from gp_spectra.measure import as_discrete, is_discrete

from .realzeros import POSITIVE_INTERVAL
from .slice import SliceStatus, SpectrumSlice

Verdict = Literal["pair", "triple", "double_in_i0"]


class IntervalCensus(BaseModel):
    """Real zeros per interval I_k of a GP1 discrete slice and which pattern they follow."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int
    counts: dict[int, int]
    """Zeros per interval index, I_0 .. I_N and -1 for [0, inf); every index present."""

    verdict: Verdict
    """`pair`: one zero in each I_1..I_{N-1} plus a conjugate pair.
    `triple`: one of I_1..I_{N-1} holds three zeros.
    `double_in_i0`: I_0 holds two zeros.
    """


def interval_census(slice_: SpectrumSlice, system: EquationSystem) -> IntervalCensus:
    """Classify the real zeros of a GP1 slice with a discrete measure.

    The N+1 zeros of F_n are either a conjugate pair with one real zero in each
    bounded interval I_k (k >= 1), or all real with the two extra zeros both in
    one I_k (k >= 1) or both in I_0. Raises `InvariantError` if none applies.
    """
    if system.kind is not EquationKind.GP1 or not is_discrete(system.measure):
        msg = "interval census applies to GP1 with a discrete measure"
        raise UnsupportedError(msg, hypothesis="GP1 with a discrete measure")
    if slice_.status is SliceStatus.INCONCLUSIVE or slice_.real_zeros is None:
        msg = f"slice n={slice_.n} has no conclusive real zeros"
        raise UnsupportedError(msg, hypothesis="conclusive slice")

    atoms = len(as_discrete(system.measure).atoms)
    counts = {k: 0 for k in [POSITIVE_INTERVAL, *range(atoms + 1)]}
    counts.update(Counter(z.interval for z in slice_.real_zeros))

    inner = [counts[k] for k in range(1, atoms)]
    outer_empty = counts[atoms] == 0 and counts[POSITIVE_INTERVAL] == 0
    verdict: Verdict | None = None
    if outer_empty and slice_.nonreal_pair is not None:
        if counts[0] == 0 and all(c == 1 for c in inner):
            verdict = "pair"
    elif outer_empty:
        if counts[0] == 2 and all(c == 1 for c in inner):
            verdict = "double_in_i0"
        elif counts[0] == 0 and sorted(inner) == [1] * (len(inner) - 1) + [3]:
            verdict = "triple"

    if verdict is None:
        msg = f"n={slice_.n}: interval counts {counts} match no admissible pattern"
        raise InvariantError(msg)
    return IntervalCensus(n=slice_.n, counts=counts, verdict=verdict)
