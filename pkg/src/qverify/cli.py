"""Command-line driver.

Exit status: 0 when every record passes, 1 when any fails, 2 for a bad
configuration or bad usage.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ConfigError
from .report import emit_report
from .suite import FAMILIES, SuiteConfig, parse_axis, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# flag -> parameter name; flags take an integer, a list "1,2,4" or a range "a..b"
_PARAM_FLAGS = {
    "m": "m", "n": "n", "L": "L", "s": "s", "r": "r", "t": "t", "r5": "r5",
    "alpha": "alpha", "gamma": "gamma", "N": "N", "D": "D", "points": "points", "sample": "sample",
}


def _flag_values(text: str, location: str) -> list:
    values = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            values.extend(parse_axis(part, location))
        else:
            try:
                values.append(int(part))
            except ValueError:
                values.append(part)
    return values


def _add_output_flags(p: argparse.ArgumentParser, default_format: str | None) -> None:
    p.add_argument("--format", choices=["text", "json"], default=default_format)
    p.add_argument("--timings", action="store_true", help="include per-record and total wall time")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qverify", description="Exact verification of q-series identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check one family over the given parameters")
    v.add_argument("family", choices=sorted(FAMILIES))
    for flag in _PARAM_FLAGS:
        v.add_argument(f"--{flag}", dest=f"p_{flag}", metavar="INT")
    v.add_argument("--variant")
    v.add_argument("--degree-bound", type=int, default=4)
    v.add_argument("--seed", type=int, default=0)
    _add_output_flags(v, "text")

    s = sub.add_parser("suite", help="run every cell of a TOML suite file")
    s.add_argument("--config", required=True)
    s.add_argument("--jobs", type=int)
    _add_output_flags(s, None)

    b = sub.add_parser("bijection", help="exhaustive bijection check")
    b.add_argument("--check", choices=["theta", "phi"], required=True)
    b.add_argument("--n", required=True)
    b.add_argument("--m", required=True)
    _add_output_flags(b, "text")
    return parser


def _config_from_args(args) -> tuple[SuiteConfig, int | None]:
    if args.command == "suite":
        cfg = SuiteConfig.load(args.config)
        if args.format:
            cfg.output_format = args.format
        return cfg, args.jobs
    if args.command == "bijection":
        axes = {"n": _flag_values(args.n, "--n"), "m": _flag_values(args.m, "--m")}
        return SuiteConfig.from_mapping({"families": {args.check: axes}, "output_format": args.format}), 1
    axes = {}
    for flag, name in _PARAM_FLAGS.items():
        raw = getattr(args, f"p_{flag}")
        if raw is not None:
            axes[name] = _flag_values(raw, f"--{flag}")
    if args.variant is not None:
        axes["variant"] = _flag_values(args.variant, "--variant")
    data = {
        "families": {args.family: axes},
        "degree_bound": args.degree_bound,
        "sample_seed": args.seed,
        "output_format": args.format,
    }
    return SuiteConfig.from_mapping(data), 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg, jobs = _config_from_args(args)
        report = run_suite(cfg, jobs=jobs)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    data = emit_report(report, cfg.output_format, timings=args.timings)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
