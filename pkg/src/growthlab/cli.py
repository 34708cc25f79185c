"""Command line front end.

Five subcommands mirror the library's workflow:

  simulate   synthesize a multi-day activity series to disk
  fit        growth exponent gamma from a snapshot TSV or event log
  predict    measure beta, map it through the growth law, compare with gamma
  sweep      Monte Carlo grid over (C, beta) confronting theory
  collapse   rescaled-distribution fit of beta from an event log

Exit codes: 0 success, 1 usage error, 2 data or domain error, 3 internal
error. Every run emits a manifest (subcommand, full parameters, input
digests, version, timestamp); re-running with identical flags reproduces
the data outputs byte for byte, the manifest's timestamp being the single
provenance exception. Numeric report tables use 6 significant digits.
"""

from __future__ import annotations

import argparse
import datetime as dt
import hashlib
import json
import math
import os
import sys

from . import __version__, seeding
from .errors import DataError, GrowthlabError
from .estimators import binned_cloud, fit_gamma_tls, rescale_histogram
from .experiment import collapse_check, compare_prediction, run_sweep
from .ingest import DailySnapshot, aggregate, load_events, write_events_csv
from .sampler import (
    SamplerConfig,
    events_from_series,
    log_uniform_schedule,
    synthesize_series,
)
from .svg import collapse_svg, growth_scatter_svg, sweep_svg
from .theory import gamma_of_beta, iid_sum_exponent

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3

_SNAPSHOT_HEADER = ["day", "P", "F", "f_max"]

_PROTOCOL_FLAG = {"coupled": "coupled-truncation", "fixed": "fixed-truncation",
                  "unbounded": "unbounded"}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # Usage problems must map to exit code 1, not argparse's default 2.
    def error(self, message):
        raise _UsageError(message)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be >= 1")
    return value


def _seed_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def _beta_value(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number")
    if not value > 1:
        raise argparse.ArgumentTypeError("beta must exceed 1")
    return value


def _float_list(text: str) -> list[float]:
    items = [piece for piece in text.split(",") if piece.strip()]
    try:
        return [float(piece) for piece in items]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated list")


def _fmt(value) -> str:
    """6 significant digits; integral values print as plain integers."""
    number = float(value)
    if math.isfinite(number) and number == int(number) and abs(number) < 1e15:
        return str(int(number))
    return f"{number:.6g}"


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as sink:
        sink.write(text)


def _emit_manifest(args: argparse.Namespace, subcommand: str,
                   inputs: list[str]) -> None:
    parameters = {
        key: value for key, value in sorted(vars(args).items())
        if key not in ("func", "subcommand")
    }
    digests = {}
    for path in inputs:
        with open(path, "rb") as source:
            digests[str(path)] = hashlib.sha256(source.read()).hexdigest()
    manifest = {
        "subcommand": subcommand,
        "parameters": parameters,
        "inputs": digests,
        "version": __version__,
        "created_utc": dt.datetime.now(dt.timezone.utc).isoformat(),
    }
    text = json.dumps(manifest, sort_keys=True)
    out = getattr(args, "out", None)
    if out:
        _write_text(os.path.join(out, "manifest.json"), text + "\n")
    print(f"# manifest {text}")


def _snapshots_tsv(snapshots) -> str:
    lines = ["\t".join(_SNAPSHOT_HEADER)]
    for snapshot in snapshots:
        day = snapshot.day.isoformat() if hasattr(snapshot.day, "isoformat") \
            else str(snapshot.day)
        lines.append(
            f"{day}\t{snapshot.population}\t{_fmt(snapshot.total_activity)}"
            f"\t{_fmt(snapshot.f_max)}"
        )
    return "\n".join(lines) + "\n"


def _parse_snapshot_tsv(path: str) -> list[tuple[float, float]]:
    with open(path, "r", encoding="utf-8") as source:
        lines = source.read().splitlines()
    if not lines:
        return []
    if [cell.strip() for cell in lines[0].split("\t")] != _SNAPSHOT_HEADER:
        expected = "\t".join(_SNAPSHOT_HEADER)
        raise DataError(f"line 1: expected header {expected!r}")
    pairs = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split("\t")
        if len(cells) != 4:
            raise DataError(f"line {lineno}: expected 4 fields, got {len(cells)}")
        try:
            pairs.append((float(cells[1]), float(cells[2])))
        except ValueError:
            raise DataError(f"line {lineno}: P and F must be numeric") from None
    return pairs


def _sniff_format(path: str) -> str:
    suffix = os.path.splitext(path)[1].lower()
    if suffix == ".tsv":
        return "snapshot"
    if suffix == ".csv":
        return "csv"
    if suffix in (".jsonl", ".ndjson"):
        return "jsonl"
    with open(path, "r", encoding="utf-8", errors="replace") as source:
        head = source.readline().strip()
    if head.startswith("day\t"):
        return "snapshot"
    if head.startswith("user_id,"):
        return "csv"
    if head.startswith("{"):
        return "jsonl"
    raise DataError(f"cannot determine format of {path!r}; pass --format")


def _load_snapshots(path: str, format: str) -> list[DailySnapshot]:
    if format == "auto":
        format = _sniff_format(path)
    if format == "snapshot":
        raise DataError(
            "this subcommand needs per-user histograms; pass an event log "
            "(csv or jsonl), not a snapshot TSV"
        )
    return aggregate(load_events(path, format=format))


def _print_table(header: list[str], row: list[str]) -> None:
    print("\t".join(header))
    print("\t".join(row))


def cmd_simulate(args: argparse.Namespace) -> int:
    if args.pmax < args.pmin:
        raise _UsageError("--pmax must be >= --pmin")
    protocol = _PROTOCOL_FLAG[args.protocol]
    if protocol == "fixed-truncation" and args.upper_cutoff is None:
        raise _UsageError("--protocol fixed requires --upper-cutoff")
    config = SamplerConfig(
        beta=args.beta, lower_cutoff=args.c, upper_cutoff=args.upper_cutoff,
        integerize=args.integerize, seed=args.seed,
    )
    schedule = log_uniform_schedule(
        seeding.generator(args.seed, seeding.STREAM_SCHEDULE),
        args.days, (args.pmin, args.pmax),
    )
    series = synthesize_series(schedule, config, protocol)
    os.makedirs(args.out, exist_ok=True)
    snapshot_path = os.path.join(args.out, "snapshots.tsv")
    _write_text(snapshot_path, _snapshots_tsv(series.days))
    written = [snapshot_path]
    if args.integerize:
        events_path = os.path.join(args.out, "events.csv")
        write_events_csv(events_from_series(series), events_path)
        written.append(events_path)
    else:
        print("# continuous activities: events.csv skipped "
              "(event counts are integers; use --integerize)")
    print(f"# wrote {', '.join(written)} ({len(series.days)} days)")
    _emit_manifest(args, "simulate", [])
    return EXIT_OK


def cmd_fit(args: argparse.Namespace) -> int:
    format = args.format
    if format == "auto":
        format = _sniff_format(args.input)
    if format == "snapshot":
        pairs = _parse_snapshot_tsv(args.input)
    else:
        pairs = [(s.population, s.total_activity)
                 for s in aggregate(load_events(args.input, format=format))]
    fit = fit_gamma_tls(pairs, bootstrap_reps=args.bootstrap_reps, seed=args.seed)
    low, high = fit.ci95_slope
    _print_table(
        ["gamma", "theta", "ci95_low", "ci95_high", "adj_r2", "n_days"],
        [_fmt(fit.slope), _fmt(fit.slope - 1.0), _fmt(low), _fmt(high),
         _fmt(fit.adjusted_r2), str(fit.n_points)],
    )
    if args.out:
        os.makedirs(args.out, exist_ok=True)
    if args.svg:
        _write_text(args.svg, growth_scatter_svg(pairs, fit.slope, fit.intercept))
        print(f"# wrote {args.svg}")
    _emit_manifest(args, "fit", [args.input])
    return EXIT_OK


def cmd_predict(args: argparse.Namespace) -> int:
    snapshots = _load_snapshots(args.input, args.format)
    prediction = compare_prediction(
        snapshots, bins_per_decade=args.bins_per_decade,
        bootstrap_reps=args.bootstrap_reps, seed=args.seed,
    )
    beta_low, beta_high = prediction.beta_fit.ci95_beta
    gamma_low, gamma_high = prediction.gamma_fit.ci95_slope
    _print_table(
        ["beta", "beta_ci_low", "beta_ci_high", "gamma_predicted",
         "gamma_fit", "gamma_ci_low", "gamma_ci_high", "consistent"],
        [_fmt(prediction.beta_fit.beta), _fmt(beta_low), _fmt(beta_high),
         _fmt(prediction.gamma_theory), _fmt(prediction.gamma_fit.slope),
         _fmt(gamma_low), _fmt(gamma_high),
         "true" if prediction.consistent else "false"],
    )
    if args.out:
        os.makedirs(args.out, exist_ok=True)
    _emit_manifest(args, "predict", [args.input])
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.pmax < args.pmin:
        raise _UsageError("--pmax must be >= --pmin")
    betas = args.beta_grid if args.beta_grid is not None else None
    if betas is not None and not betas:
        raise _UsageError("--beta-grid must name at least one beta")
    if betas is not None and any(b <= 1 for b in betas):
        raise _UsageError("every beta in --beta-grid must exceed 1")
    c_values = args.c_values
    if c_values is not None and not c_values:
        raise _UsageError("--c-values must name at least one cutoff")
    protocol = _PROTOCOL_FLAG[args.protocol]
    cells = run_sweep(
        c_values=c_values, beta_values=betas, days_per_cell=args.days,
        population_range=(args.pmin, args.pmax), protocol=protocol,
        seed=args.seed, bootstrap_reps=args.bootstrap_reps,
        max_workers=args.threads,
    )
    os.makedirs(args.out, exist_ok=True)
    lines = ["C\tbeta\tinv_beta\tgamma_fit\tgamma_theory\tr2\tstatus"]
    for cell in cells:
        status = cell.status if cell.status == "ok" else (
            "failed: " + " ".join(cell.message.split())
        )
        lines.append(
            f"{_fmt(cell.c)}\t{_fmt(cell.beta)}\t{_fmt(cell.inverse_beta)}"
            f"\t{_fmt(cell.gamma_fit)}\t{_fmt(cell.gamma_theory)}"
            f"\t{_fmt(cell.fit_quality)}\t{status}"
        )
    cells_path = os.path.join(args.out, "cells.tsv")
    _write_text(cells_path, "\n".join(lines) + "\n")
    ok = sum(1 for cell in cells if cell.status == "ok")
    print(f"# wrote {cells_path} ({ok} ok, {len(cells) - ok} failed of "
          f"{len(cells)} cells)")
    if protocol == "unbounded":
        # The bounded-distribution law and the iid-sum scaling part ways
        # for beta < 2; report both so the divergence is explicit.
        for beta in sorted({cell.beta for cell in cells}):
            print(
                f"# beta {_fmt(beta)}: coupled-truncation law predicts gamma "
                f"{_fmt(gamma_of_beta(beta))}; unbounded iid-sum scaling "
                f"predicts gamma {_fmt(iid_sum_exponent(beta))}"
            )
    if args.svg:
        _write_text(args.svg, sweep_svg(cells))
        print(f"# wrote {args.svg}")
    _emit_manifest(args, "sweep", [])
    return EXIT_OK


def cmd_collapse(args: argparse.Namespace) -> int:
    snapshots = _load_snapshots(args.input, args.format)
    quality, fit = collapse_check(
        snapshots, beta_hypothesis=args.beta,
        bins_per_decade=args.bins_per_decade,
        bootstrap_reps=args.bootstrap_reps, seed=args.seed,
    )
    low, high = fit.ci95_beta
    _print_table(
        ["beta", "ci95_low", "ci95_high", "adj_r2", "n_days"],
        [_fmt(fit.beta), _fmt(low), _fmt(high), _fmt(fit.adjusted_r2),
         str(len(snapshots))],
    )
    if args.beta is not None:
        print(f"# hypothesis beta {_fmt(args.beta)}: adj_r2 {_fmt(quality)}")
    if args.out:
        os.makedirs(args.out, exist_ok=True)
    if args.svg:
        rescaled = [rescale_histogram(s.histogram, s.day) for s in snapshots]
        cloud = binned_cloud(rescaled, args.bins_per_decade)
        _write_text(args.svg, collapse_svg(snapshots, cloud, fit.beta))
        print(f"# wrote {args.svg}")
    _emit_manifest(args, "collapse", [args.input])
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="growthlab", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version",
                        version=f"growthlab {__version__}")
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")

    simulate = sub.add_parser("simulate", help="synthesize an activity series")
    simulate.add_argument("--beta", type=_beta_value, required=True)
    simulate.add_argument("--c", type=float, default=1.0,
                          help="lower activity cutoff (default 1)")
    simulate.add_argument("--protocol", choices=sorted(_PROTOCOL_FLAG),
                          default="coupled")
    simulate.add_argument("--upper-cutoff", type=float, default=None,
                          help="cutoff for --protocol fixed")
    simulate.add_argument("--days", type=_positive_int, default=100)
    simulate.add_argument("--pmin", type=_positive_int, default=1000)
    simulate.add_argument("--pmax", type=_positive_int, default=100000)
    simulate.add_argument("--seed", type=_seed_int, default=0)
    simulate.add_argument("--integerize", action="store_true",
                          help="floor activities to integers; also writes events.csv")
    simulate.add_argument("--out", required=True, help="output directory")
    simulate.set_defaults(func=cmd_simulate)

    fit = sub.add_parser("fit", help="fit the growth exponent gamma")
    fit.add_argument("--input", required=True,
                     help="snapshot TSV or event log (csv/jsonl)")
    fit.add_argument("--format", choices=["auto", "snapshot", "csv", "jsonl"],
                     default="auto")
    fit.add_argument("--bootstrap-reps", type=int, default=1000)
    fit.add_argument("--seed", type=_seed_int, default=0)
    fit.add_argument("--svg", default=None, help="write a scatter+fit figure here")
    fit.add_argument("--out", default=None, help="directory for the manifest")
    fit.set_defaults(func=cmd_fit)

    predict = sub.add_parser(
        "predict", help="predict gamma from measured heterogeneity"
    )
    predict.add_argument("--input", required=True, help="event log (csv/jsonl)")
    predict.add_argument("--format", choices=["auto", "csv", "jsonl"],
                         default="auto")
    predict.add_argument("--bins-per-decade", type=_positive_int, default=5)
    predict.add_argument("--bootstrap-reps", type=int, default=1000)
    predict.add_argument("--seed", type=_seed_int, default=0)
    predict.add_argument("--out", default=None)
    predict.set_defaults(func=cmd_predict)

    sweep = sub.add_parser("sweep", help="Monte Carlo sweep over (C, beta)")
    sweep.add_argument("--c-values", type=_float_list, default=None,
                       help="comma-separated cutoffs (default 1..10)")
    sweep.add_argument("--beta-grid", type=_float_list, default=None,
                       help="comma-separated betas (default 40 values in (1,10])")
    sweep.add_argument("--days", type=_positive_int, default=100)
    sweep.add_argument("--pmin", type=_positive_int, default=100)
    sweep.add_argument("--pmax", type=_positive_int, default=10000)
    sweep.add_argument("--protocol", choices=sorted(_PROTOCOL_FLAG),
                       default="coupled")
    sweep.add_argument("--seed", type=_seed_int, default=0)
    sweep.add_argument("--bootstrap-reps", type=int, default=0)
    sweep.add_argument("--threads", type=int, default=None,
                       help="thread cap (default: GROWTHLAB_THREADS, 0 = auto)")
    sweep.add_argument("--svg", default=None)
    sweep.add_argument("--out", required=True)
    sweep.set_defaults(func=cmd_sweep)

    collapse = sub.add_parser(
        "collapse", help="fit beta from rescaled daily distributions"
    )
    collapse.add_argument("--input", required=True, help="event log (csv/jsonl)")
    collapse.add_argument("--format", choices=["auto", "csv", "jsonl"],
                          default="auto")
    collapse.add_argument("--bins-per-decade", type=_positive_int, default=5)
    collapse.add_argument("--bootstrap-reps", type=int, default=1000)
    collapse.add_argument("--beta", type=_beta_value, default=None,
                          help="score the collapse against this fixed beta")
    collapse.add_argument("--seed", type=_seed_int, default=0)
    collapse.add_argument("--svg", default=None)
    collapse.add_argument("--out", default=None)
    collapse.set_defaults(func=cmd_collapse)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"growthlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        # argparse exits directly for --help/--version; keep their code 0.
        return EXIT_OK if not exc.code else EXIT_USAGE
    if getattr(args, "func", None) is None:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"growthlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GrowthlabError as exc:
        print(f"growthlab: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"growthlab: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # pragma: no cover - defensive
        print(f"growthlab: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL
