from __future__ import annotations

from typing import TYPE_CHECKING

import matplotlib as mpl
from matplotlib.figure import Figure

from gp_spectra.errors import UnsupportedError
from gp_spectra.logging import logger
from gp_spectra.spectrum.asymptotics import predict

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path

    from gp_spectra.chareq import EquationSystem
    from gp_spectra.spectrum.slice import SpectrumSlice

FIGSIZE = (6.0, 6.0)
_RC = {
    "svg.hashsalt": "gp-spectra",
    "svg.fonttype": "none",
    "savefig.edgecolor": "none",
    "savefig.facecolor": "white",
}


def render_spectrum(
    slices: Sequence[SpectrumSlice],
    system: EquationSystem | None,
    path: str | Path,
) -> None:
    """Write the spectrum as a deterministic SVG.

    Real zeros are ticks on the real axis, non-real pairs symmetric points, and
    the asymptotic prediction (when one applies) a dashed curve through the same modes.
    """
    ordered = sorted(slices, key=lambda s: s.n)
    with mpl.rc_context(_RC):
        fig = Figure(figsize=FIGSIZE)
        ax = fig.add_subplot()
        ax.axhline(0.0, color="0.6", linewidth=0.8)
        ax.axvline(0.0, color="0.6", linewidth=0.8)

        real = [z.value for s in ordered for z in (s.real_zeros or ())]
        if real:
            ax.plot(real, [0.0] * len(real), linestyle="none", marker="|", markersize=12, color="tab:blue", label="real zeros")

        pairs = [s.w for s in ordered if s.w is not None]
        if pairs:
            xs = [w.real for w in pairs]
            ax.plot(xs + xs, [w.imag for w in pairs] + [-w.imag for w in pairs], linestyle="none", marker="o", markersize=4, color="tab:red", label="non-real pairs")

        curve = _prediction_curve(ordered, system)
        if curve:
            ax.plot([z.real for z in curve], [z.imag for z in curve], linestyle="--", linewidth=1.0, color="tab:green", label="asymptotic prediction")

        ax.set_xlabel("Re z")
        ax.set_ylabel("Im z")
        if real or pairs or curve:
            ax.legend(loc="upper left")
        fig.savefig(path, format="svg", metadata={"Date": None})
    logger.debug("wrote %s with %d slices", path, len(ordered))


def _prediction_curve(
    slices: Sequence[SpectrumSlice], system: EquationSystem | None
) -> list[complex]:
    if system is None or not slices:
        return []
    try:
        return [predict(system, s.n).predicted for s in slices]
    except UnsupportedError:
        return []
