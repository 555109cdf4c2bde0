"""
Command-line interface.

Usage:
    python -m src audit input.json --region unit-disk
    python -m src verify --seed 0 --trials 100
    python -m src distance --fn1 a.json --fn2 b.json --region unit-disk
    python -m src example --m 3
    python -m src growth --m-max 6 --csv growth.csv

Reports go to stdout (or --output) as JSON, or as a table with --format table.
Exit codes: 0 clean, 1 error, 2 doublets flagged.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

import pandas as pd

from . import __version__
from .algebra.codec import load_rational_function
from .audit.families import example_family, growth_study
from .audit.pipeline import audit
from .audit.verification import SUITES, verify
from .indicators.metrics import distances_inequality_check
from .indicators.region import parse_region
from .utils.config import get_config
from .utils.errors import AuditError
from .utils.logger import set_level, setup_logger
from .utils.serialization import dump_json, to_jsonable, write_json

logger = setup_logger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_DOUBLETS = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rfaudit",
        description="Audit rational functions for Froissart doublets.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--format",
        choices=("json", "table"),
        default="json",
        help="Output format (default: json).",
    )
    parser.add_argument("--output", type=Path, help="Write the report to this file.")
    parser.add_argument("--log-level", help="Override RFA_LOG_LEVEL.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_audit = sub.add_parser("audit", help="Full audit of one rational function.")
    p_audit.add_argument("input", type=Path, help='JSON file {"p", "q", "m", "n"}.')
    p_audit.add_argument("--region", default="unit-disk", help="Region K (default: unit-disk).")
    p_audit.add_argument(
        "--ell",
        type=int,
        action="append",
        help="Sylvester index to report; repeatable (default: 1).",
    )
    p_audit.add_argument("--threshold", type=float, help="Chordal doublet threshold.")

    p_verify = sub.add_parser("verify", help="Randomized inequality suite.")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--trials", type=int, default=100)
    p_verify.add_argument("--suite", action="append", choices=sorted(SUITES))

    p_distance = sub.add_parser("distance", help="chi_K and d between two functions.")
    p_distance.add_argument("--fn1", type=Path, required=True)
    p_distance.add_argument("--fn2", type=Path, required=True)
    p_distance.add_argument("--region", default="unit-disk")

    p_example = sub.add_parser("example", help="Member m of the ill-conditioned family.")
    p_example.add_argument("--m", type=int, required=True)

    p_growth = sub.add_parser("growth", help="chi_D / d growth over the family.")
    p_growth.add_argument("--m-min", type=int, default=1)
    p_growth.add_argument("--m-max", type=int, default=6)
    p_growth.add_argument("--csv", type=Path, help="Also write the table as CSV.")

    return parser


def _table(command: str, payload: dict) -> pd.DataFrame:
    if command == "audit":
        rows = []
        for cert in payload["certificates"]:
            row = {
                "zero": cert["zero"],
                "pole": cert["pole"],
                "chi": cert["chi_dist"],
                "euclid": cert["euclid_dist"],
                "flagged": cert["flagged"],
                "ok": cert["ok"],
            }
            row.update(cert["bounds"])
            rows.append(row)
        return pd.DataFrame(rows)
    if command == "verify":
        return pd.DataFrame.from_dict(payload["suites"], orient="index")
    if command == "distance":
        flat = {k: v for k, v in payload.items() if not isinstance(v, (dict, list))}
        return pd.DataFrame([flat])
    if command == "example":
        flat = {k: v for k, v in payload.items() if k not in ("u", "v")}
        return pd.DataFrame([flat])
    return pd.DataFrame(payload["rows"])


def _emit(command: str, payload: dict, fmt: str, output: Optional[Path]) -> None:
    if fmt == "table":
        text = _table(command, to_jsonable(payload)).to_string() + "\n"
        if output:
            output.parent.mkdir(parents=True, exist_ok=True)
            output.write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        return
    if output:
        write_json(payload, output)
    else:
        sys.stdout.write(dump_json(payload))


def run(args: argparse.Namespace) -> int:
    config = get_config()

    if args.command == "audit":
        report = audit(args.input, args.region, args.ell, args.threshold, config)
        _emit("audit", report.to_dict(), args.format, args.output)
        if report.flagged:
            logger.warning(f"{len(report.flagged)} doublet(s) flagged")
        return EXIT_DOUBLETS if report.exit_code == EXIT_DOUBLETS else EXIT_OK

    if args.command == "verify":
        summary = verify(args.seed, args.trials, config, args.suite)
        _emit("verify", summary, args.format, args.output)
        return EXIT_OK

    if args.command == "distance":
        r = load_rational_function(args.fn1)
        rt = load_rational_function(args.fn2)
        region = parse_region(args.region, base_dir=args.fn1.parent)
        report = distances_inequality_check(r, rt, region, config.search, config.tolerances)
        _emit("distance", report.to_dict(), args.format, args.output)
        return EXIT_OK

    if args.command == "example":
        family = example_family(args.m, config.search)
        _emit("example", family.to_dict(), args.format, args.output)
        return EXIT_OK

    table = growth_study(range(args.m_min, args.m_max + 1), config.search)
    if args.csv:
        args.csv.parent.mkdir(parents=True, exist_ok=True)
        table.to_csv(args.csv, index=False, float_format="%.17g")
        logger.info(f"Growth table written to {args.csv}")
    _emit("growth", {"rows": table.to_dict(orient="records")}, args.format, args.output)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.log_level:
        set_level(args.log_level.upper())
    try:
        return run(args)
    except (AuditError, OSError, ValueError) as e:
        logger.error(f"{args.command} failed: {str(e)}")
        print(f"error: {str(e)}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
