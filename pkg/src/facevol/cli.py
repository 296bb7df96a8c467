"""Command line entry point: verify one dimension or a range, write reports.

Exit codes: 0 all checks pass, 1 some check failed, 2 usage or config error.
Set FACEVOL_LOG=INFO (or DEBUG) for progress logging on stderr.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .report import (
    DEFAULT_N_RANGE,
    MAX_N_GUARD,
    RunConfig,
    run_verification,
    serialize_report,
    serialize_reports,
)

log = logging.getLogger("facevol")

USAGE_EXIT = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="verify",
        description=(
            "Exact-arithmetic verification of simplex face-volume facts: "
            "Jacobian independence certificate, incidence spectrum, divisor "
            "quotients, and the claim audit."
        ),
        epilog="Environment: FACEVOL_LOG sets the log level (e.g. INFO, DEBUG).",
    )
    target = parser.add_mutually_exclusive_group()
    target.add_argument("--n", type=int, help="single dimension to verify (>= 3)")
    target.add_argument(
        "--n-range",
        metavar="A:B",
        help=f"inclusive dimension range (default {DEFAULT_N_RANGE[0]}:{DEFAULT_N_RANGE[1]})",
    )
    parser.add_argument(
        "--samples",
        type=int,
        default=3,
        help="random sample points for the independence certificate (default 3)",
    )
    parser.add_argument("--seed", type=int, default=42, help="sampling seed (default 42)")
    parser.add_argument(
        "--format",
        choices=("json", "markdown"),
        default="json",
        dest="fmt",
        help="report format (default json)",
    )
    parser.add_argument(
        "--output",
        help="output file (single n) or directory (range); default stdout",
    )
    parser.add_argument(
        "--jobs", type=int, default=1, help="verify dimensions in parallel (default 1)"
    )
    parser.add_argument(
        "--max-n",
        type=int,
        default=MAX_N_GUARD,
        help=f"refuse dimensions above this guard (default {MAX_N_GUARD})",
    )
    return parser


def _parse_range(text: str) -> tuple[int, ...]:
    lo_s, sep, hi_s = text.partition(":")
    if not sep:
        raise ValueError(f"range must look like A:B, got {text!r}")
    lo, hi = int(lo_s), int(hi_s)
    if hi < lo:
        raise ValueError(f"empty range {text!r}")
    return tuple(range(lo, hi + 1))


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0

    level = os.environ.get("FACEVOL_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr)

    single_mode = args.n is not None
    try:
        if single_mode:
            n_values: tuple[int, ...] = (args.n,)
        elif args.n_range is not None:
            n_values = _parse_range(args.n_range)
        else:
            n_values = tuple(range(DEFAULT_N_RANGE[0], DEFAULT_N_RANGE[1] + 1))
        config = RunConfig(
            n_values=n_values,
            samples=args.samples,
            seed=args.seed,
            fmt=args.fmt,
            output=args.output,
            jobs=args.jobs,
            max_n=args.max_n,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT

    reports = run_verification(config)

    ext = "json" if config.fmt == "json" else "md"
    if config.output is None:
        sys.stdout.write(serialize_reports(reports, config.fmt))
    elif single_mode:
        path = Path(config.output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(serialize_report(reports[0], config.fmt))
        log.info("wrote %s", path)
    else:
        # range mode always writes one file per n, even for a 1-element range
        outdir = Path(config.output)
        outdir.mkdir(parents=True, exist_ok=True)
        for r in reports:
            path = outdir / f"verify_n{r.n}.{ext}"
            path.write_text(serialize_report(r, config.fmt))
            log.info("wrote %s", path)

    return 0 if all(r.overall_pass for r in reports) else 1


if __name__ == "__main__":
    raise SystemExit(main())
