"""Command-line front end.

    deformedjc timeseries --preset fig1a --out fig1a.csv
    deformedjc timeseries --model two --state pc --k 2e-3 --delta critical
    deformedjc table table2 --out table2.csv
    deformedjc validate
    deformedjc critical-detuning --model single --mean 30 --k 1e-4 --lambda 1e-3
    deformedjc describe --preset fig6f

Parameters come from, in increasing priority: built-in defaults, a preset,
a key=value ``--config`` file, and individual flags.
"""

from __future__ import annotations

import argparse
import io
import os
import sys
from pathlib import Path

import numpy as np

from . import single, tables, two, validation
from .scenarios import PRESETS, ConfigError, ResolvedScenario, ScenarioConfig, critical_detuning
from .scenarios import describe
from .scenarios import from_mapping, parse_config_text, resolve

SINGLE_COLUMNS = ("lambda_t", "W_S", "L", "coherence")
TWO_COLUMNS = ("lambda_t",) + two.SERIES_COLUMNS


def _add_scenario_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", choices=sorted(PRESETS), metavar="NAME",
                   help="named figure panel, fig1a ... fig9f")
    p.add_argument("--config", type=Path, help="key=value file; flags override it")
    p.add_argument("--model", choices=("single", "two"))
    p.add_argument("--state", help="cs, sv, pc or tsv (or the full family name)")
    p.add_argument("--amp", help="alpha, r, zeta or r depending on the state")
    p.add_argument("--k", help="deformation parameter in [0, 1]")
    p.add_argument("--delta", help="detuning, or 'critical'")
    p.add_argument("--lambda", dest="lam", help="coupling constant")
    p.add_argument("--tmax", help="end of the lambda*t grid")
    p.add_argument("--dt", help="lambda*t step")
    p.add_argument("--nmax", help="Fock cutoff, or 'auto'")
    p.add_argument("--out", help="output path, '-' for stdout")


def _scenario_from_args(args) -> ScenarioConfig:
    values: dict = {}
    if args.preset:
        values["preset"] = args.preset
    if args.config is not None:
        try:
            text = args.config.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        file_values = parse_config_text(text)
        if "preset" in file_values and args.preset:
            file_values.pop("preset")
        values.update(file_values)
    for key in ("model", "state", "amp", "k", "delta", "lam", "tmax", "dt", "nmax", "out"):
        value = getattr(args, key, None)
        if value is not None:
            values[key] = value
    return from_mapping(values)


def format_rows(columns: tuple[str, ...], data: dict[str, np.ndarray]) -> str:
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in zip(*(data[c] for c in columns)):
        buf.write(",".join(f"{float(v):.12g}" for v in row) + "\n")
    return buf.getvalue()


def timeseries_csv(res: ResolvedScenario) -> str:
    cfg = res.config
    if cfg.model == "single":
        data = single.series_single(res.field, res.params, cfg.tmax, cfg.dt)
        return format_rows(SINGLE_COLUMNS, data)
    data = two.series_two(res.field, res.params, cfg.tmax, cfg.dt)
    return format_rows(TWO_COLUMNS, data)


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise ConfigError(f"cannot write {out}: {exc}") from exc


def cmd_timeseries(args) -> int:
    res = resolve(_scenario_from_args(args))
    _emit(timeseries_csv(res), res.config.out)
    return 0


def cmd_describe(args) -> int:
    sys.stdout.write(describe(_scenario_from_args(args)))
    return 0


def cmd_table(args) -> int:
    _emit(tables.format_cells(tables.run_table(args.which)), args.out)
    return 0


def cmd_validate(args) -> int:
    results = validation.run_validate()
    _emit(validation.report(results), args.out)
    return 0 if all(r.passed for r in results) else 1


def cmd_critical(args) -> int:
    lam = args.lam if args.lam is not None else (1e-3 if args.model == "single" else 2e-3)
    value = critical_detuning(args.model, args.mean, args.k, lam)
    print(f"{value:.12g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deformedjc",
                                     description="Deformed Jaynes-Cummings dynamics and entanglement.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("timeseries", help="write the time series of one scenario as CSV")
    _add_scenario_flags(p)
    p.set_defaults(func=cmd_timeseries)

    p = sub.add_parser("describe", help="print the fully resolved scenario")
    _add_scenario_flags(p)
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("table", help="recompute a table of time-averaged entanglement")
    p.add_argument("which", choices=("table1", "table2"))
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("validate", help="oracle, algebra and identity checks")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("critical-detuning", help="detuning that puts the Rabi minimum at a given mean")
    p.add_argument("--model", choices=("single", "two"), default="single")
    p.add_argument("--mean", type=float, required=True,
                   help="mean photon number (total over both modes for --model two)")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float)
    p.set_defaults(func=cmd_critical)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        # reader went away (e.g. piped into head); not an error of ours
        sys.stdout = open(os.devnull, "w")
        return 0


if __name__ == "__main__":
    sys.exit(main())
