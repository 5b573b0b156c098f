"""Deterministic CSV, JSON and JSON-lines renderings; every float carries 17 significant digits."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from gp_spectra.dw import DwTrace, ZeroCertificate
    from gp_spectra.spectrum.asymptotics import AsymptoticsReport
    from gp_spectra.spectrum.realzeros import RealZero
    from gp_spectra.spectrum.slice import SpectrumSlice

CSV_HEADER = ("n", "re_w", "im_w", "method", "certified", "real_zeros_json")


def format_number(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def dumps(obj: Any) -> str:
    """Compact JSON with floats at 17 significant digits and non-finite floats as null."""
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_number(obj)
    if isinstance(obj, complex):
        return dumps(complex_record(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k))}:{dumps(v)}" for k, v in obj.items())
        return "{" + ",".join(items) + "}"
    if isinstance(obj, list | tuple):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    msg = f"cannot serialise {type(obj).__name__}"
    raise TypeError(msg)


def complex_record(z: complex | None) -> dict[str, float] | None:
    return None if z is None else {"re": z.real, "im": z.imag}


def real_zero_record(zero: RealZero) -> dict[str, Any]:
    return {"value": zero.value, "interval": zero.interval, "lower": zero.lower, "upper": zero.upper}


def certificate_record(certificate: ZeroCertificate | None) -> dict[str, Any] | None:
    if certificate is None:
        return None
    return {
        "box": certificate.box.model_dump(),
        "winding": certificate.winding,
        "quadrature_residual": certificate.quadrature_residual,
    }


def _certified_label(slice_: SpectrumSlice) -> str:
    certified = slice_.certified
    if certified is None:
        return "inconclusive"
    return "true" if certified else "false"


def _real_zeros(slice_: SpectrumSlice) -> list[dict[str, Any]] | None:
    if slice_.real_zeros is None:
        return None
    return [real_zero_record(z) for z in slice_.real_zeros]


def slices_csv(slices: Iterable[SpectrumSlice]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for s in slices:
        w = s.w
        writer.writerow(
            [
                s.n,
                "" if w is None else format_number(w.real),
                "" if w is None else format_number(w.imag),
                s.method.value,
                _certified_label(s),
                dumps(_real_zeros(s)),
            ]
        )
    return buffer.getvalue()


def slice_record(s: SpectrumSlice) -> dict[str, Any]:
    return {
        "n": s.n,
        "status": s.status.value,
        "reason": s.reason,
        "method": s.method.value,
        "nonreal_pair": None if s.nonreal_pair is None else [complex_record(z) for z in s.nonreal_pair],
        "real_zeros": _real_zeros(s),
        "certificate": certificate_record(s.certificate),
        "dw_classification": None if s.dw_classification is None else s.dw_classification.value,
    }


def slices_json(slices: Sequence[SpectrumSlice]) -> str:
    return dumps([slice_record(s) for s in slices]) + "\n"


def report_json(report: AsymptoticsReport) -> str:
    rows = []
    for row in report.rows:
        record: dict[str, Any] = {
            "n": row.n,
            "computed": complex_record(row.computed),
            "predicted": complex_record(row.predicted),
            "rel_error": row.rel_error,
        }
        if row.correction_ratio is not None:
            record["correction_ratio"] = row.correction_ratio
            record["correction_arg"] = row.correction_arg
        rows.append(record)
    return (
        dumps(
            {
                "formula": report.formula.value,
                "monotone": report.monotone,
                "complete": report.complete,
                "rows": rows,
            }
        )
        + "\n"
    )


def trace_jsonl(trace: DwTrace) -> str:
    return "".join(dumps(record) + "\n" for record in trace.records())


def error_json(error: BaseException) -> str:
    record: dict[str, Any] = {"error": type(error).__name__, "message": " ".join(str(error).split())}
    hypothesis = getattr(error, "hypothesis", None)
    if hypothesis is not None:
        record["hypothesis"] = hypothesis
    return dumps(record)
