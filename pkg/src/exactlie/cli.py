"""Command-line front end: ``exactlie verify ...``.

Exit codes: 0 when every check passes, 1 on a verification failure,
2 on usage errors and 3 when an algebra exceeds the biderivation cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from .biderivations import DEFAULT_CAP, CapExceeded
from .report import ALL_CHECKS, AlgebraSpec, SuiteConfig, UsageError, render_text, run_suite, to_json

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _checks(text: str) -> List[str]:
    names = [c.strip() for c in text.split(",") if c.strip()]
    bad = [c for c in names if c not in ALL_CHECKS]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"choose from {','.join(ALL_CHECKS)}")
    return [c for c in ALL_CHECKS if c in names]


def _cap(text: str) -> Optional[int]:
    if text.lower() == "none":
        return None
    return int(text)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="exactlie", description="Exact verification of derivations, biderivations and commuting maps.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    v = sub.add_parser("verify", help="verify one algebra or a suite")
    target = v.add_mutually_exclusive_group()
    target.add_argument("--family", choices=list("ABCDEFG"))
    target.add_argument("--gl", type=int, metavar="N")
    target.add_argument("--sl", type=int, metavar="N")
    target.add_argument("--input", metavar="FILE", help="algebra in the JSON structure-tensor format")
    target.add_argument("--suite", metavar="FILE", help='suite config JSON, or "default"')
    v.add_argument("--rank", type=int)
    v.add_argument("--json", metavar="FILE", help="write the JSON report here ('-' for stdout)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--cap", type=_cap, default=DEFAULT_CAP, help="largest dimension for biderivation solving ('none' disables)")
    v.add_argument("--checks", type=_checks, default=list(ALL_CHECKS), metavar="LIST", help="comma-separated subset of " + ",".join(ALL_CHECKS))
    v.add_argument("--no-timings", action="store_true", help="omit timings from the JSON report")
    return p


def _config(args) -> SuiteConfig:
    if args.rank is not None and args.family is None:
        raise UsageError("--rank requires --family")
    if args.suite is not None:
        if args.suite == "default":
            doc = {}
        else:
            try:
                doc = json.loads(Path(args.suite).read_text())
            except (OSError, ValueError) as e:
                raise UsageError(f"cannot read suite {args.suite}: {e}") from None
            if not isinstance(doc, dict):
                raise UsageError("suite file must hold a JSON object")
        config = SuiteConfig.from_dict(doc)
        config.seed, config.cap, config.checks = args.seed, args.cap, tuple(args.checks)
        return config
    spec = AlgebraSpec(family=args.family, rank=args.rank, gl=args.gl, sl=args.sl, input=args.input)
    spec.validate()
    return SuiteConfig([spec], args.cap, args.seed, tuple(args.checks))


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        config = _config(args)
        report = run_suite(config)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    if args.json == "-":
        sys.stdout.write(to_json(report, timings=not args.no_timings))
    else:
        if args.json:
            Path(args.json).write_text(to_json(report, timings=not args.no_timings))
        sys.stdout.write(render_text(report))
    return EXIT_PASS if report["verdict"] == "PASS" else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
