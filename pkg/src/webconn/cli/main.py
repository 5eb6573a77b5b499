"""Command line entry point: ``webconn <command> <file> [--json] [--out FILE] [--experimental]``."""
from __future__ import annotations

import argparse
import sys

from ..errors import WebError
from .parser import parse_spec
from .report import COMMANDS, run, serialize_report


def _parser():
    ap = argparse.ArgumentParser(prog="webconn", description="Invariants, connection and rank of planar d-webs.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("file", help="web description file ('-' for stdin)")
    ap.add_argument("--json", action="store_true", help="machine readable output")
    ap.add_argument("--out", metavar="FILE", help="write the report to FILE")
    ap.add_argument("--experimental", action="store_true", help="allow degrees above 6")
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.file == "-":
            text = sys.stdin.read()
        else:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc.strerror}", file=sys.stderr)
        return 2
    try:
        spec = parse_spec(text)
        report = run(args.command, spec, args.experimental)
    except WebError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    out = serialize_report(report, "json" if args.json else "text")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
