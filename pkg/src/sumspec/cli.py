"""Command line: ``sumspec analyze <file>`` and ``sumspec selftest``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import ParseError
from .runner import emit, run
from .scenario import parse_scenario


def _analyze(args) -> int:
    try:
        data = Path(args.file).read_bytes()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        spec = parse_scenario(data)
    except ParseError as exc:
        print(f"{args.file}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    report = run(spec, workers=args.workers, seed=args.seed, trunc_size=args.trunc_size,
                 timing=args.timing)
    text = emit(report, args.format)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return report.exit_code


def _selftest(args) -> int:
    from .selftest import run_selftest
    return run_selftest(verbose=not args.quiet)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sumspec", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", help="run the checks of a scenario file")
    a.add_argument("file", help="scenario file (UTF-8)")
    a.add_argument("--format", choices=("json", "csv"), default="json")
    a.add_argument("--seed", type=int, help="base seed; overrides a set seed line")
    a.add_argument("--trunc-size", type=int, help="default truncation size for numeric checks")
    a.add_argument("--out", help="write the report here instead of stdout")
    a.add_argument("--workers", type=int, default=1, help="worker processes (output is identical)")
    a.add_argument("--timing", action="store_true", help="record wall time (breaks byte stability)")
    a.set_defaults(func=_analyze)
    s = sub.add_parser("selftest", help="run the built-in invariant suites")
    s.add_argument("--quiet", action="store_true", help="exit code only")
    s.set_defaults(func=_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # internal error: report, never a traceback dump
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
