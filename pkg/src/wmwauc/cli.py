"""Command-line interface: ``wmwauc test | pseudomedian | simulate``.

Exit codes: 0 success, 2 usage error, 3 data error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from typing import Optional, Sequence

from . import __version__
from .errors import DataError
from .inference import ALTERNATIVES, METHODS, TestConfig, wmw_test
from .mc import ESTIMANDS, PRESETS, Dist, SimConfig, preset, run_simulation
from .pseudomedian import pseudomedian_ci
from .sample import TwoSampleData, validate
from .variance_eu import COEFFICIENTS

SCHEMA_VERSION = "1"
EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 2, 3


class UsageError(Exception):
    pass


# -- CSV ingestion -----------------------------------------------------------


def _parse_float(text: str, where: str, skip_bad: bool, skipped: list) -> Optional[float]:
    try:
        value = float(text)
    except ValueError:
        value = math.nan
    if math.isfinite(value):
        return value
    if skip_bad:
        skipped.append(where)
        return None
    raise DataError(f"cannot use {text!r} as a finite number ({where})")


def _read_rows(path: str, delimiter: str):
    try:
        with open(path, newline="") as fh:
            return [row for row in csv.reader(fh, delimiter=delimiter) if row]
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from None


def _column_index(header: Optional[list], name: Optional[str], path: str) -> int:
    if name is None:
        return 0
    if header is None:
        try:
            return int(name)
        except ValueError:
            raise UsageError("without a header, columns are given as 0-based indices") from None
    if name not in header:
        raise DataError(f"column {name!r} not found in {path}; columns: {header}")
    return header.index(name)


def _read_column(path, column, delimiter, header, skip_bad, skipped) -> list[float]:
    rows = _read_rows(path, delimiter)
    head = rows.pop(0) if header and rows else None
    idx = _column_index(head, column, path)
    out = []
    for line, row in enumerate(rows, start=2 if header else 1):
        if idx >= len(row):
            raise DataError(f"{path}:{line}: missing column {idx}")
        v = _parse_float(row[idx].strip(), f"{path}:{line}", skip_bad, skipped)
        if v is not None:
            out.append(v)
    return out


def load_data(args) -> tuple[TwoSampleData, dict]:
    skipped: list[str] = []
    header = not args.no_header
    if args.data:
        if args.x or args.y:
            raise UsageError("use either --data or --x/--y, not both")
        if args.group_col is None or args.value_col is None:
            raise UsageError("--data requires --group-col and --value-col")
        if bool(args.x_label) != bool(args.y_label):
            raise UsageError("--x-label and --y-label go together")
        rows = _read_rows(args.data, args.delimiter)
        head = rows.pop(0) if header and rows else None
        gi = _column_index(head, args.group_col, args.data)
        vi = _column_index(head, args.value_col, args.data)
        groups: dict[str, list[float]] = {}
        for line, row in enumerate(rows, start=2 if header else 1):
            if max(gi, vi) >= len(row):
                raise DataError(f"{args.data}:{line}: missing column")
            label = row[gi].strip()
            if args.x_label and label not in (args.x_label, args.y_label):
                continue
            v = _parse_float(row[vi].strip(), f"{args.data}:{line}", args.skip_bad, skipped)
            if v is not None:
                groups.setdefault(label, []).append(v)
        if args.x_label:
            labels = [args.x_label, args.y_label]
        else:
            labels = list(groups)
            if len(labels) != 2:
                raise DataError(
                    f"group column must hold exactly two labels, found {len(labels)}: {labels}"
                )
        raw_x, raw_y = groups.get(labels[0], []), groups.get(labels[1], [])
        source = {"mode": "single-file", "data": args.data, "x_label": labels[0], "y_label": labels[1]}
    elif args.x and args.y:
        raw_x = _read_column(args.x, args.value_col, args.delimiter, header, args.skip_bad, skipped)
        raw_y = _read_column(args.y, args.value_col, args.delimiter, header, args.skip_bad, skipped)
        source = {"mode": "two-files", "x": args.x, "y": args.y}
    else:
        raise UsageError("give --x FILE and --y FILE, or --data FILE with --group-col/--value-col")
    data = validate(raw_x, raw_y)
    source.update(n1=data.n1, n2=data.n2, skipped_rows=len(skipped))
    return data, source


# -- reports -------------------------------------------------------------------


def _clean(obj):
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def make_report(command: str, inputs: dict, result: dict, warnings: Sequence[str]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input": inputs,
        "result": result,
        "warnings": list(warnings),
    }


def dumps_json(report: dict) -> str:
    # repr-based float output is the shortest string that round-trips exactly
    return json.dumps(_clean(report), indent=2, allow_nan=False) + "\n"


def dumps_text(report: dict) -> str:
    lines = [f"wmwauc {report['command']} (schema {report['schema_version']})"]

    def walk(prefix: str, obj):
        for k, v in obj.items():
            if isinstance(v, dict):
                walk(f"{prefix}{k}.", v)
            elif k != "warnings":
                lines.append(f"  {prefix}{k}: {v}")

    walk("input.", _clean(report["input"]))
    walk("", _clean(report["result"]))
    for w in report["warnings"]:
        lines.append(f"  warning: {w}")
    return "\n".join(lines) + "\n"


# -- commands ------------------------------------------------------------------


def cmd_test(args) -> dict:
    try:
        cfg = TestConfig(
            a0=args.a0,
            alpha=args.alpha,
            method=args.method,
            alternative=args.alternative,
            eu_coefficients=args.eu_coefficients,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    data, source = load_data(args)
    res = wmw_test(data, cfg)
    result = {
        "a_hat": res.a_hat,
        "se": res.se,
        "df": "normal" if res.df is None else res.df,
        "statistic": res.statistic,
        "p_value": res.p_value,
        "ci": [res.ci_lo, res.ci_hi],
        "a0": res.a0,
        "alpha": res.alpha,
        "alternative": res.alternative,
        "method": res.method,
        "has_cross_ties": res.has_cross_ties,
    }
    return make_report("test", source, result, res.warnings)


def cmd_pseudomedian(args) -> dict:
    if args.grid_k < 3:
        raise UsageError("--grid-k must be at least 3")
    try:
        cfg = TestConfig(alpha=args.alpha, eu_coefficients=args.eu_coefficients)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    data, source = load_data(args)
    res = pseudomedian_ci(data, cfg, args.grid_k)
    result = {
        "theta_hat": res.theta_hat,
        "ci": [res.ci_lo, res.ci_hi],
        "alpha": res.alpha,
        "scale": res.scale,
        "grid_k": res.grid_k,
        "search_range": [res.search_lo, res.search_hi],
        "n_accepted": res.n_accepted,
        "refined": res.refined,
    }
    return make_report("pseudomedian", source, result, res.warnings)


def cmd_simulate(args) -> dict:
    if args.preset:
        if args.preset not in PRESETS:
            raise UsageError(f"unknown preset {args.preset!r}; choose from {sorted(PRESETS)}")
        cfg = preset(
            args.preset,
            n1=args.n1,
            n2=args.n2,
            reps=args.reps,
            seed=args.seed,
            estimand=args.estimand,
            gen_x=Dist.parse(args.gen_x) if args.gen_x else None,
            gen_y=Dist.parse(args.gen_y) if args.gen_y else None,
            compare_traditional=args.compare_traditional or None,
        )
    else:
        if not (args.gen_x and args.gen_y and args.n1 and args.n2):
            raise UsageError("without --preset, give --gen-x, --gen-y, --n1 and --n2")
        cfg = SimConfig(
            n1=args.n1,
            n2=args.n2,
            reps=args.reps or 1000,
            seed=args.seed if args.seed is not None else 0,
            gen_x=Dist.parse(args.gen_x),
            gen_y=Dist.parse(args.gen_y),
            estimand=args.estimand or "auc-mean-sd",
            compare_traditional=args.compare_traditional,
        )
    test_cfg = TestConfig(a0=args.a0, alpha=args.alpha, method=args.method,
                          eu_coefficients=args.eu_coefficients)
    summary = run_simulation(cfg, test_cfg, threads=args.threads)
    inputs = {
        "preset": args.preset,
        "n1": cfg.n1,
        "n2": cfg.n2,
        "reps": cfg.reps,
        "seed": cfg.seed,
        "gen_x": str(cfg.gen_x),
        "gen_y": str(cfg.gen_y),
        "estimand": cfg.estimand,
        "a0": test_cfg.a0,
        "alpha": test_cfg.alpha,
        "method": test_cfg.method,
    }
    return make_report("simulate", inputs, summary.to_dict(), [])


# -- argument parsing ------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_data_args(p):
    g = p.add_argument_group("input")
    g.add_argument("--x", metavar="FILE", help="CSV holding the x sample")
    g.add_argument("--y", metavar="FILE", help="CSV holding the y sample")
    g.add_argument("--data", metavar="FILE", help="single CSV with a group column")
    g.add_argument("--group-col", metavar="G")
    g.add_argument("--value-col", metavar="V", help="value column name (index without header)")
    g.add_argument("--x-label", help="group label of the x sample (single-file mode)")
    g.add_argument("--y-label", help="group label of the y sample (single-file mode)")
    g.add_argument("--delimiter", default=",")
    g.add_argument("--no-header", action="store_true")
    g.add_argument("--skip-bad", action="store_true", help="drop rows that fail to parse")


def _add_output_args(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", dest="fmt", action="store_const", const="json")
    g.add_argument("--text", dest="fmt", action="store_const", const="text")
    p.set_defaults(fmt="json")


def _add_test_args(p, with_method=True):
    p.add_argument("--a0", type=float, default=0.5)
    p.add_argument("--alpha", type=float, default=0.05)
    if with_method:
        p.add_argument("--method", choices=METHODS, default="auto")
        p.add_argument("--alternative", choices=ALTERNATIVES, default="two-sided")
    p.add_argument("--eu-coefficients", choices=COEFFICIENTS, default="exact")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wmwauc", description="Wilcoxon-Mann-Whitney inference for H0: AUC = A0")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("test", help="test H0: AUC = a0")
    _add_data_args(p)
    _add_test_args(p)
    p.add_argument("--seed", type=int, help="accepted for symmetry; unused")
    _add_output_args(p)
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("pseudomedian", help="pseudomedian with a test-inversion CI")
    _add_data_args(p)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--grid-k", type=int, default=512)
    p.add_argument("--eu-coefficients", choices=COEFFICIENTS, default="exact")
    _add_output_args(p)
    p.set_defaults(func=cmd_pseudomedian)

    p = sub.add_parser("simulate", help="Monte Carlo study")
    p.add_argument("--preset", help=f"one of {sorted(PRESETS)}")
    p.add_argument("--gen-x", help='e.g. "normal(0, 0.1)"')
    p.add_argument("--gen-y", help='e.g. "discretized-normal(0, 1, 0.5)"')
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--reps", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--estimand", choices=ESTIMANDS)
    p.add_argument("--compare-traditional", action="store_true")
    p.add_argument("--threads", type=int, help="worker threads (default $WMW_THREADS)")
    _add_test_args(p)
    _add_output_args(p)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required: test, pseudomedian or simulate")
        report = args.func(args)
    except UsageError as exc:
        print(f"wmwauc: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"wmwauc: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"wmwauc: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = dumps_json(report) if args.fmt == "json" else dumps_text(report)
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
