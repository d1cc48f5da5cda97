"""Command-line front end: extract features, run a grid, re-render reports.

Exit codes: 0 success, 2 bad config or arguments, 3 data or report
problems, 4 when at least one grid cell failed to converge (the other
cells still complete and are recorded).
"""

from __future__ import annotations

import argparse
import sys

from .errors import ConfigError, DataError, ReportError
from .experiment import cmd_extract, cmd_report, cmd_run, load_config


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="veintex",
        description="Texture-descriptor recognition experiments over image datasets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    helps = {
        "extract": "compute feature dumps for every configured descriptor and split side",
        "run": "run the full classifier grid and write records, reports, and tables",
    }
    for name, text in helps.items():
        cmd = sub.add_parser(name, help=text)
        cmd.add_argument("--config", required=True, help="path to a JSON experiment config")
        cmd.add_argument("--seed", type=int, default=None, help="override the config seed")
        cmd.add_argument("--out", default=None, help="override the config output directory")

    report = sub.add_parser("report", help="re-render tables from a finished run directory")
    report.add_argument("run_dir", help="directory written by a previous run")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "extract":
            cfg = load_config(args.config, args.seed, args.out)
            for path in cmd_extract(cfg):
                print(path)
            return 0
        if args.command == "run":
            cfg = load_config(args.config, args.seed, args.out)
            tables, code = cmd_run(cfg)
            sys.stdout.write(tables)
            return code
        sys.stdout.write(cmd_report(args.run_dir))
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (DataError, ReportError, OSError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
