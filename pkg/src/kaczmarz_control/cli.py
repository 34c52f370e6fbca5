"""Command-line front end: load a system, run the solver, emit a JSON report.

Exit codes: 0 when the run converged, 2 when the iteration budget ran out,
1 on any error. All row indices in emitted files are 1-based; iteration
steps are 0-based so they line up with window boundaries.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .controls import IndexSequence, extract_covering_windows, recurrence_report
from .engine import Cyclic, MaxResidual, StopReason, WeightedRandom, run_kaczmarz
from .errors import KaczmarzError
from .leave_one_out import cross_validate
from .linalg import min_norm_solution
from .loaders import load_system, load_vector, rhs_source

EMIT_CHOICES = ("trace", "histogram", "tau", "report")
CONTROL_CHOICES = ("cyclic", "maxres", "random")

log = logging.getLogger("kaczmarz")


class UsageError(KaczmarzError):
    """Bad flags or flag combinations."""


@dataclass(frozen=True)
class RunConfig:
    input_path: Path
    control: str = "maxres"
    seed: int | None = None
    max_iters: int = 100_000
    tol: float = 1e-10
    x0: str = "zero"
    reference: str = "none"
    emit: tuple[str, ...] = ("trace",)
    output_path: Path | None = None
    csv_trace: Path | None = None

    def __post_init__(self):
        if self.control not in CONTROL_CHOICES:
            raise UsageError(f"control must be one of {CONTROL_CHOICES}, got {self.control!r}")
        if self.max_iters < 1:
            raise UsageError("max-iters must be at least 1")
        if self.tol < 0.0:
            raise UsageError("tol must be nonnegative")
        if (self.control == "random") != (self.seed is not None):
            raise UsageError("--seed is required exactly when --control is random")
        if self.seed is not None and not 0 <= self.seed < 2**64:
            raise UsageError("seed must fit in 64 bits")
        bad = [tok for tok in self.emit if tok not in EMIT_CHOICES]
        if bad:
            raise UsageError(f"unknown emit section(s) {bad}; choose from {EMIT_CHOICES}")


def run_experiment(config: RunConfig) -> int:
    """Execute one configured run and write its JSON (and optional CSV) output."""
    try:
        document, stop_reason = _execute(config)
        _write_json(config, document)
    except KaczmarzError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0 if stop_reason is StopReason.CONVERGED else 2


def _strategy(config: RunConfig):
    if config.control == "cyclic":
        return Cyclic()
    if config.control == "maxres":
        return MaxResidual()
    return WeightedRandom(seed=config.seed)


def _execute(config: RunConfig):
    system = load_system(config.input_path)
    log.info("loaded %d x %d system from %s", system.m, system.n, config.input_path)

    x0 = None if config.x0 == "zero" else load_vector(config.x0)
    if config.reference == "none":
        reference = None
    elif config.reference == "oracle":
        reference = min_norm_solution(system)
    else:
        reference = load_vector(config.reference)

    trace = run_kaczmarz(
        system,
        _strategy(config),
        x0=x0,
        max_iters=config.max_iters,
        residual_tol=config.tol,
        reference=reference,
    )
    log.info(
        "run stopped: %s after %d iterations", trace.stop_reason.value, trace.iterations_run
    )

    if config.csv_trace is not None:
        _write_csv_trace(config.csv_trace, trace)

    final_residual = float(np.abs(system.a @ trace.final_iterate - system.b).max())
    document = {
        "config": {
            "input": str(config.input_path),
            "control": config.control,
            "seed": config.seed,
            "max_iters": config.max_iters,
            "tol": config.tol,
            "x0": config.x0,
            "reference": config.reference,
            "emit": sorted(config.emit),
            "output": None if config.output_path is None else str(config.output_path),
            "csv_trace": None if config.csv_trace is None else str(config.csv_trace),
            "rhs_source": rhs_source(config.input_path),
        },
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "system": {"rows": system.m, "cols": system.n},
        "result": {
            "stop_reason": trace.stop_reason.value,
            "iterations_run": trace.iterations_run,
            "final_iterate": [float(v) for v in trace.final_iterate],
            "final_max_residual": final_residual,
            "nonzero_start": trace.nonzero_start,
        },
    }

    sequence = IndexSequence(tuple(int(i) for i in trace.selected_indices), system.m)
    if "trace" in config.emit:
        document["trace"] = {
            "selected_rows": [int(i) + 1 for i in trace.selected_indices],
            "max_abs_residual": [float(v) for v in trace.residual_max_abs],
            "distance_to_reference": (
                None
                if trace.distance_to_reference is None
                else [float(v) for v in trace.distance_to_reference]
            ),
        }
    if "histogram" in config.emit:
        rec = recurrence_report(sequence)
        document["histogram"] = {
            "counts": list(rec.counts),
            "last_selected_step": [t if t is None else int(t) for t in rec.last_seen],
            "missing_rows": sorted(i + 1 for i in rec.missing),
        }
    if "tau" in config.emit:
        windows = extract_covering_windows(sequence)
        document["tau"] = {
            "boundaries": list(windows.boundaries),
            "covered_prefix_len": windows.covered_prefix_len,
            "complete_windows": windows.complete_windows,
            "tail_missing_rows": sorted(i + 1 for i in windows.tail_missing),
        }
    if "report" in config.emit:
        report = cross_validate(system)
        document["report"] = {
            "eq_tol": report.eq_tol,
            "system_rank_ok": report.system_rank_ok,
            "all_essential": report.all_essential,
            "rows": [
                {
                    "row": check.row + 1,
                    "distance": check.distance,
                    "essential_direct": check.essential_direct,
                    "qr_residual": check.qr_residual,
                    "essential_qr": check.essential_qr,
                    "agree": check.agree,
                    "borderline": check.borderline,
                }
                for check in report.rows
            ],
        }
    return document, trace.stop_reason


def _write_json(config: RunConfig, document) -> None:
    payload = json.dumps(document, indent=2, sort_keys=True) + "\n"
    if config.output_path is None or str(config.output_path) == "-":
        sys.stdout.write(payload)
    else:
        Path(config.output_path).write_text(payload)


def _write_csv_trace(path, trace) -> None:
    lines = ["step,row,max_abs_residual,distance_to_reference"]
    for k in range(trace.iterations_run):
        dist = "" if trace.distance_to_reference is None else repr(
            float(trace.distance_to_reference[k])
        )
        lines.append(
            f"{k},{int(trace.selected_indices[k]) + 1},"
            f"{float(trace.residual_max_abs[k])!r},{dist}"
        )
    Path(path).write_text("\n".join(lines) + "\n")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="kaczmarz",
        description="Solve a consistent linear system by row projections and report the run.",
    )
    parser.add_argument("--input", required=True, help="system file (MatrixMarket or CSV)")
    parser.add_argument("--control", choices=CONTROL_CHOICES, default="maxres")
    parser.add_argument("--seed", type=int, default=None, help="required iff --control random")
    parser.add_argument("--max-iters", type=int, default=100_000)
    parser.add_argument("--tol", type=float, default=1e-10)
    parser.add_argument("--x0", default="zero", help="'zero' or a vector file")
    parser.add_argument(
        "--reference", default="none", help="'none', 'oracle', or a vector file"
    )
    parser.add_argument(
        "--emit",
        default="trace",
        help=f"comma-separated sections from {','.join(EMIT_CHOICES)}",
    )
    parser.add_argument("--output", default=None, help="JSON output path (default stdout)")
    parser.add_argument("--csv-trace", default=None, help="also write a flat per-step CSV")
    return parser


def _setup_logging() -> None:
    level = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}.get(
        os.environ.get("KACZMARZ_LOG", "error").lower(), logging.ERROR
    )
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv=None) -> int:
    _setup_logging()
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
        config = RunConfig(
            input_path=Path(ns.input),
            control=ns.control,
            seed=ns.seed,
            max_iters=ns.max_iters,
            tol=ns.tol,
            x0=ns.x0,
            reference=ns.reference,
            emit=tuple(tok.strip() for tok in ns.emit.split(",") if tok.strip()),
            output_path=None if ns.output is None else Path(ns.output),
            csv_trace=None if ns.csv_trace is None else Path(ns.csv_trace),
        )
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    log.debug("config: %s", config)
    return run_experiment(config)


if __name__ == "__main__":
    sys.exit(main())
