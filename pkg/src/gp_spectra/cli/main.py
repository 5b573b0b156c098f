from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import TYPE_CHECKING, NoReturn

from pydantic import ValidationError

from gp_spectra.config import Tolerances
from gp_spectra.dw import iterate
from gp_spectra.errors import IterationError, SpectraError
from gp_spectra.logging import logger, setup_logger, verbosity_level
from gp_spectra.spectrum.asymptotics import verify_asymptotics
from gp_spectra.spectrum.cutoff import exact_min_n, kv_nonreal_cutoff, nonreal_modes
from gp_spectra.spectrum.parallel import map_modes
from gp_spectra.spectrum.slice import SliceStatus, SpectrumSlice, compute_slice

from .config import RunConfig, parse_n_values, read_system
from .output import dumps, error_json, report_json, slices_csv, slices_json, trace_jsonl
from .plot import render_spectrum

if TYPE_CHECKING:
    from collections.abc import Sequence

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2
EXIT_NOT_MONOTONE = 3


class UsageError(ValueError):
    """Bad command line; reported like any other input error."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--system", required=True, help="Path to the system JSON")
    common.add_argument("--tol", type=float, default=None, help="Relative residual for roots (default 1e-12)")
    common.add_argument("--threads", type=int, default=None, help="Worker threads (overrides SPECTRA_THREADS)")
    common.add_argument("--seed", type=int, default=None, help="Seed recorded for randomised runs")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logs")

    parser = _Parser(prog="spectra", description="Spectra of Gurtin-Pipkin and Kelvin-Voigt equations with memory")
    commands = parser.add_subparsers(dest="command", required=True)

    spectrum = commands.add_parser("spectrum", parents=[common], help="Zeros of each mode")
    spectrum.add_argument("--n", required=True, help="Modes: a..b, a list n1,n2,... or one index")
    spectrum.add_argument("--out", choices=["csv", "json"], default="csv")
    spectrum.add_argument("--output", default=None, help="Output file (default stdout)")
    spectrum.add_argument("--force-dw", action="store_true", help="Use iteration and certificates even for discrete measures")

    verify = commands.add_parser("verify", parents=[common], help="Compare zeros with the asymptotic formulas")
    verify.add_argument("--n", required=True)
    verify.add_argument("--formula", default=None, help="instantaneous, finite_mass, power_law or power_law_corrected")
    verify.add_argument("--alpha", type=float, default=None, help="Remainder exponent of the power law")
    verify.add_argument("--output", default=None)

    cutoff = commands.add_parser("kv-cutoff", parents=[common], help="Mode bound for a real KV spectrum")
    cutoff.add_argument("--output", default=None)

    trace = commands.add_parser("dw-trace", parents=[common], help="Fixed-point iterates of one mode as JSON lines")
    trace.add_argument("--n", type=int, required=True)
    trace.add_argument("--output", default=None)

    plot = commands.add_parser("plot", parents=[common], help="SVG figure of the spectrum")
    plot.add_argument("--n", required=True)
    plot.add_argument("--out", required=True, help="Path of the SVG file")
    return parser


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _config(args: argparse.Namespace, n_values: tuple[int, ...] = (1,), **extra: object) -> RunConfig:
    tolerances = Tolerances() if args.tol is None else Tolerances(root_tol=args.tol)
    return RunConfig.model_validate(
        {
            "system": read_system(args.system),
            "n_values": n_values,
            "tolerances": tolerances,
            "threads": args.threads,
            "seed": args.seed,
            **extra,
        }
    )


def _slices(config: RunConfig) -> list[SpectrumSlice]:
    opts = config.slice_options
    return map_modes(lambda n: compute_slice(config.system, n, opts), config.n_values, config.threads)


def _status(slices: Sequence[SpectrumSlice]) -> int:
    inconclusive = [s.n for s in slices if s.status is SliceStatus.INCONCLUSIVE]
    if inconclusive:
        logger.warning("inconclusive modes: %s", inconclusive)
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_spectrum(config: RunConfig, output: str | None) -> int:
    slices = _slices(config)
    _emit(slices_csv(slices) if config.output == "csv" else slices_json(slices), output)
    return _status(slices)


def cmd_verify(
    config: RunConfig, output: str | None, formula: str | None, alpha: float | None
) -> int:
    report = verify_asymptotics(
        config.system,
        config.n_values,
        formula=formula,
        alpha=alpha,
        opts=config.slice_options,
        threads=config.threads,
    )
    _emit(report_json(report), output)
    if not report.monotone:
        return EXIT_NOT_MONOTONE
    return EXIT_OK if report.complete else EXIT_INCONCLUSIVE


def cmd_kv_cutoff(config: RunConfig, output: str | None) -> int:
    tolerances = config.tolerances
    cutoff = kv_nonreal_cutoff(config.system)
    record = {
        "n_star": cutoff.n_star,
        "r_star": cutoff.r_star,
        "witness": cutoff.witness,
        "exact_min_n": exact_min_n(config.system, cutoff.n_star, tolerances.im_tol, tolerances.root_tol),
        "nonreal_modes": nonreal_modes(
            config.system, cutoff.n_star, tolerances.im_tol, tolerances.root_tol, config.threads
        ),
    }
    _emit(dumps(record) + "\n", output)
    return EXIT_OK


def cmd_dw_trace(config: RunConfig, output: str | None) -> int:
    tolerances = config.tolerances
    cf = config.system.mode(config.n_values[0], guard=tolerances.pole_guard)
    try:
        trace = iterate(cf, 1j, tolerances.dw_max_iter, tolerances.dw_tol)
    except IterationError as e:
        _emit(trace_jsonl(e.trace), output)
        raise
    _emit(trace_jsonl(trace), output)
    return EXIT_OK


def cmd_plot(config: RunConfig, output: str) -> int:
    slices = _slices(config)
    render_spectrum(slices, config.system, output)
    return _status(slices)


def _dispatch(args: argparse.Namespace) -> int:
    match args.command:
        case "spectrum":
            config = _config(
                args,
                parse_n_values(args.n),
                output=args.out,
                force_method="dw" if args.force_dw else None,
            )
            return cmd_spectrum(config, args.output)
        case "verify":
            return cmd_verify(_config(args, parse_n_values(args.n)), args.output, args.formula, args.alpha)
        case "kv-cutoff":
            return cmd_kv_cutoff(_config(args), args.output)
        case "dw-trace":
            return cmd_dw_trace(_config(args, (args.n,)), args.output)
        case "plot":
            return cmd_plot(_config(args, parse_n_values(args.n), plot="svg"), args.out)
    msg = f"unknown command {args.command}"
    raise UsageError(msg)


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point of the `spectra` command; returns the exit code."""
    try:
        args = build_parser().parse_args(argv)
        setup_logger(level=verbosity_level(args.verbose))
        return _dispatch(args)
    except (SpectraError, ValidationError, ValueError, OSError) as e:
        sys.stderr.write(error_json(e) + "\n")
        return EXIT_ERROR
