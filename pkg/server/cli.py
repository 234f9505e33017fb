"""
Command line front end
스윕 CSV, PDF 곡선 덤프, 표/그림 재현, 검증 스위트, API 서버 실행

Exit codes: 0 success, 1 other analysis error, 2 config/scenario error, 3 acceptance failure.
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from config.settings import (
    CONFIG_KEYS,
    configure_logging,
    format_config,
    load_config_file,
    resolve_config,
)
from services.errors import ConfigError, DomainError, NomaError, ScenarioError, UnknownTargetError
from services.montecarlo_service import McConfig, build_mc_config
from services.reproduce_service import TARGETS, get_reproduction_service
from services.scenario import bpsk_constellation, scenario_from_config
from services.sweep_service import (
    AXIS_COLUMN,
    check_curve_normalization,
    ec_sweep,
    op_sweep,
    pdf_dump,
    records_to_csv,
    records_to_table,
)
from services.validation_service import get_validation_service

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ACCEPTANCE = 3


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value config file")
    common.add_argument("--alpha1", type=float)
    common.add_argument("--snr-db", dest="snr_db", type=float)
    common.add_argument("--rate", type=float)
    common.add_argument("--zeta", type=float)
    common.add_argument("--omega", type=float)
    common.add_argument("--samples", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--out", help="output path (directory for pdf-dump)")
    common.add_argument("--manifest", help="append one JSON line per Monte Carlo run to this file")
    common.add_argument("--print-config", action="store_true",
                        help="print the resolved configuration and exit")
    common.add_argument("--log-level", default=None)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="noma-postsic", description="post-SIC NOMA analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (("op-sweep", "outage sweep"), ("ec-sweep", "ergodic capacity sweep")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--axis", choices=sorted(AXIS_COLUMN), default="snr")
        p.add_argument("--grid", help="start:step:stop")
        p.add_argument("--mc", action="store_true", help="add Monte Carlo columns")
        p.add_argument("--format", choices=("csv", "table"), default="csv")

    p = sub.add_parser("pdf-dump", parents=[common], help="write PDF curve CSVs")
    p.add_argument("--point", choices=("X00", "X01", "X10", "X11"), default="X11")
    p.add_argument("--mc", action="store_true", help="also write Monte Carlo histograms")

    p = sub.add_parser("check-pdf", help="check that dumped curves integrate to 1")
    p.add_argument("paths", nargs="+")
    p.add_argument("--tol", type=float, default=1e-6)

    p = sub.add_parser("reproduce", parents=[common], help="reproduce a table or figure")
    p.add_argument("target", help=f"one of {', '.join(TARGETS)}")

    p = sub.add_parser("validate", parents=[common], help="run the invariant suites")
    p.add_argument("--level", choices=("fast", "full"), default="fast")

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host", default=None)
    p.add_argument("--port", type=int, default=None)
    return parser


def resolve_args(args: argparse.Namespace) -> Dict[str, Any]:
    """flags > config file > environment/defaults"""
    file_values = load_config_file(args.config) if getattr(args, "config", None) else None
    overrides = {key: getattr(args, key, None) for key in CONFIG_KEYS}
    return resolve_config(file_values, overrides)


def _mc_config(values: Dict[str, Any], manifest: Optional[str] = None) -> McConfig:
    return build_mc_config(samples=values["samples"], seed=values["seed"], manifest_path=manifest)


def _write(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


# ============================================
# Commands
# ============================================

def cmd_sweep(args: argparse.Namespace, values: Dict[str, Any]) -> int:
    s = scenario_from_config(values)
    if values["zeta"] < 0:
        raise ScenarioError("zeta", f"must be >= 0, got {values['zeta']}")
    mc = _mc_config(values, args.manifest) if args.mc else None
    sweep = op_sweep if args.command == "op-sweep" else ec_sweep
    records = sweep(s, zeta=values["zeta"], axis=args.axis, grid=args.grid, mc=mc)
    x_name = AXIS_COLUMN[args.axis]
    render = records_to_csv if args.format == "csv" else records_to_table
    _write(render(records, x_name), args.out)
    return EXIT_OK


def cmd_pdf_dump(args: argparse.Namespace, values: Dict[str, Any]) -> int:
    s = scenario_from_config(values)
    point = {p.label: p for p in bpsk_constellation(s)}[args.point]
    out_dir = args.out or f"pdf_{point.label}_{s.snr_db:g}dB"
    paths = pdf_dump(s, point, out_dir, _mc_config(values, args.manifest) if args.mc else None)
    sys.stdout.write("\n".join(paths) + "\n")
    return EXIT_OK


def cmd_check_pdf(args: argparse.Namespace) -> int:
    ok = all([check_curve_normalization(path, args.tol) for path in args.paths])
    return EXIT_OK if ok else EXIT_ACCEPTANCE


def cmd_reproduce(args: argparse.Namespace, values: Dict[str, Any]) -> int:
    result = get_reproduction_service().run(args.target, _mc_config(values, args.manifest))
    _write(result.report(), args.out)
    return EXIT_OK if result.passed else EXIT_ACCEPTANCE


def cmd_validate(args: argparse.Namespace, values: Dict[str, Any]) -> int:
    report = get_validation_service().run(args.level)
    _write(report.model_dump_json(indent=2) + "\n", args.out)
    return EXIT_OK if report.passed else EXIT_ACCEPTANCE


def cmd_serve(args: argparse.Namespace) -> int:
    from config.settings import SERVER_HOST, SERVER_PORT
    from main import serve

    serve(args.host or SERVER_HOST, args.port or SERVER_PORT)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(getattr(args, "log_level", None))

    try:
        if args.command == "check-pdf":
            return cmd_check_pdf(args)
        if args.command == "serve":
            return cmd_serve(args)

        values = resolve_args(args)
        if args.print_config:
            sys.stdout.write(format_config(values))
            return EXIT_OK

        if args.command in ("op-sweep", "ec-sweep"):
            return cmd_sweep(args, values)
        if args.command == "pdf-dump":
            return cmd_pdf_dump(args, values)
        if args.command == "reproduce":
            return cmd_reproduce(args, values)
        return cmd_validate(args, values)

    except (ScenarioError, ConfigError, DomainError, UnknownTargetError) as e:
        logger.error("❌ %s", e)
        return EXIT_CONFIG
    except NomaError as e:
        logger.error("❌ %s", e)
        return 1


if __name__ == "__main__":
    sys.exit(main())
