"""Command-line interface.

Subcommands: validate, score, classify, stats, scenario, checklist.
Reports go to stdout (or --out); diagnostics go to stderr. Exit codes:
0 success, 1 internal error, 2 input or validation error. The SPW_REGISTER
environment variable supplies a default register path where one is not
given on the command line.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import cvss
from .errors import SpwkitError
from .register import Register, load_register
from .report import (
    ReportDocument,
    ReportFormat,
    checklist_report,
    classify_report,
    scenario_report,
    stats_report,
)
from .scenario import evaluate, load_scenario

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2

REGISTER_ENV = "SPW_REGISTER"


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=[f.value for f in ReportFormat],
                        default=ReportFormat.MARKDOWN.value,
                        help="report output format (default: md)")
    common.add_argument("--out", metavar="PATH",
                        help="write the report to PATH instead of stdout")
    common.add_argument("--seed", type=int, default=None,
                        help="override the scenario's Monte Carlo seed")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="spw",
        description="Power-aware security risk assessment for CubeSat missions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common],
                       help="validate a register file")
    p.add_argument("register", nargs="?", help=f"register CSV (default: ${REGISTER_ENV})")

    p = sub.add_parser("score", parents=[common],
                       help="score a CVSS v3.1 vector string")
    p.add_argument("vector", help="vector, e.g. CVSS:3.1/AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H")

    p = sub.add_parser("classify", parents=[common],
                       help="tier-classify every register entry")
    p.add_argument("register", nargs="?", help=f"register CSV (default: ${REGISTER_ENV})")

    p = sub.add_parser("stats", parents=[common],
                       help="per-subsystem severity summary")
    p.add_argument("register", nargs="?", help=f"register CSV (default: ${REGISTER_ENV})")

    p = sub.add_parser("scenario", parents=[common],
                       help="evaluate a scenario file and report the comparison")
    p.add_argument("scenario", help="scenario JSON file")
    p.add_argument("--paper-check", action="store_true",
                   help="append a comparison of computed values against the "
                        "published reference figures bundled for this scenario")

    sub.add_parser("checklist", parents=[common],
                   help="emit the supply-chain baseline practice checklist")
    return parser


def _register_path(args) -> str:
    path = getattr(args, "register", None) or os.environ.get(REGISTER_ENV)
    if not path:
        raise SpwkitError(
            f"no register given: pass a path or set ${REGISTER_ENV}")
    return path


def _emit(doc: ReportDocument, args) -> None:
    rendered = doc.render(ReportFormat(args.format))
    if args.out:
        Path(args.out).write_text(rendered, encoding="utf-8")
    else:
        sys.stdout.write(rendered)


def _load(args) -> Register:
    return load_register(_register_path(args))


def cmd_validate(args) -> int:
    register = _load(args)
    print(f"{len(register)} entries OK")
    return EXIT_OK


def cmd_score(args) -> int:
    print(cvss.score_string(args.vector))
    return EXIT_OK


def cmd_classify(args) -> int:
    _emit(classify_report(_load(args)), args)
    return EXIT_OK


def cmd_stats(args) -> int:
    _emit(stats_report(_load(args)), args)
    return EXIT_OK


def cmd_scenario(args) -> int:
    scenario = load_scenario(args.scenario)
    register = load_register(scenario.register_path)
    result = evaluate(scenario, register, seed=args.seed)
    _emit(scenario_report(scenario, register, result, paper_check=args.paper_check),
          args)
    return EXIT_OK


def cmd_checklist(args) -> int:
    _emit(checklist_report(), args)
    return EXIT_OK


_COMMANDS = {
    "validate": cmd_validate,
    "score": cmd_score,
    "classify": cmd_classify,
    "stats": cmd_stats,
    "scenario": cmd_scenario,
    "checklist": cmd_checklist,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except SpwkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
