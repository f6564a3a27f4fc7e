"""Command-line entry point for quadrangle-lie."""

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from quadrangle_lie.config import get_log_level, get_output_dir, get_regression_path
from quadrangle_lie.geometry.fields import FieldError, parse_field
from quadrangle_lie.geometry.quadrangle import LINE_COUNT, build_catalog, lines_csv, points_csv
from quadrangle_lie.geometry.rootbases import enumerate_phi, phi_csv
from quadrangle_lie.geometry.weyl import (
    line_normalizer,
    order3_in_normalizer,
    reflection_pair_orders,
    weyl_group,
)
from quadrangle_lie.liealg.extension import verify_closure_over
from quadrangle_lie.liealg.operators import default_operator_table
from quadrangle_lie.liealg.subalgebra import (
    ClosureError,
    InvariantViolation,
    NotStableError,
    Subalgebra,
    build_dl,
    build_e6,
    build_g2,
    fold_pattern,
    select_d,
)
from quadrangle_lie.liealg.tables import load_table, structure_table, verify_table, write_table
from quadrangle_lie.verification.context import SuiteContext
from quadrangle_lie.verification.regression import freeze
from quadrangle_lie.verification.suites import SUITES, run_suites

logger = logging.getLogger("quadrangle-lie")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

# Alternative spellings accepted by verify --suite
SUITE_ALIASES = {"prop26": "pairs", "prop31": "brackets", "prop45": "g2cases"}


@dataclass(frozen=True)
class RunConfig:
    """
    Options shared by the commands.

    Attributes:
        field_degree: k for GF(2^k), 1..8
        line_id: Line L, 0..44
        d_policy: "auto" or an index into the order-3 elements of N_W(L)
        output_path: Explicit output file, or None for the default location
        fmt: Export format, "json" or "csv"
    """

    field_degree: int = 1
    line_id: int = 0
    d_policy: str | int = "auto"
    output_path: Path | None = None
    fmt: str = "json"


def _field_degree(text: str) -> int:
    try:
        return parse_field(text)
    except FieldError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _line_id(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"Line id must be an integer, got {text!r}") from e
    if not 0 <= value < LINE_COUNT:
        raise argparse.ArgumentTypeError(f"Line id must be in 0..{LINE_COUNT - 1}, got {value}")
    return value


def _d_policy(text: str) -> str | int:
    if text == "auto":
        return text
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"--d must be 'auto' or an index, got {text!r}") from e
    if value < 0:
        raise argparse.ArgumentTypeError(f"--d index must be non-negative, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadrangle-lie",
        description="E6, D4 and G2 Lie algebras in characteristic 2 from the O6-(2) quadrangle",
    )
    parser.add_argument("--log-level", default=None, help="Logging level (default from environment)")
    commands = parser.add_subparsers(dest="command", required=True)

    def algebra_options(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--line", type=_line_id, default=0, help="Line id L (0..44)")
        sub.add_argument("--d", type=_d_policy, default="auto", help="'auto' or index of d in N_W(L)")
        sub.add_argument("--field", type=_field_degree, default=1, help="Scalar field 2^k (k ≤ 8)")

    catalog = commands.add_parser("catalog", help="Counts of the quadrangle, root bases and Weyl group")
    catalog.add_argument("--dump", choices=["points", "lines", "phi"], help="Print a CSV table instead")
    catalog.add_argument("--out", type=Path, help="Write the CSV table to a file")

    weyl = commands.add_parser("weyl", help="Weyl group order, line normalizer and order-3 elements")
    weyl.add_argument("--line", type=_line_id, default=0, help="Line id L (0..44)")
    focus = weyl.add_mutually_exclusive_group()
    focus.add_argument("--order", action="store_true", help="Print only the group order")
    focus.add_argument(
        "--normalizer",
        type=_line_id,
        metavar="LINE",
        help="Print only |N_W(L)| and its order-3 count",
    )

    phi = commands.add_parser("phi", help="The 72 root bases")
    phi.add_argument("--dump", action="store_true", help="Print id,p0..p5,s_code,dual_id rows")
    phi.add_argument("--out", type=Path, help="Write the CSV table to a file")

    verify = commands.add_parser("verify", help="Run verification suites")
    verify.add_argument(
        "--suite",
        action="append",
        choices=[*SUITES, *SUITE_ALIASES],
        help="Suite to run (repeatable)",
    )
    verify.add_argument("--list", action="store_true", help="List the suites and exit")
    verify.add_argument("--freeze", action="store_true", help="Recompute and rewrite the regression file")
    verify.add_argument("--out", type=Path, help="Path of the JSON report")
    algebra_options(verify)

    build = commands.add_parser("build", help="Build an algebra and export its structure table")
    build.add_argument("target", choices=["e6", "d4", "g2"])
    build.add_argument("--format", choices=["json", "csv"], default="json")
    build.add_argument("--out", type=Path, help="Path of the exported table")
    algebra_options(build)

    return parser


def setup_logging(level: str | None = None) -> None:
    """Send log records to stderr; stdout carries command output."""
    level = (level or get_log_level()).upper()
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    logger.setLevel(level)


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    print(f"wrote {out}")


def cmd_catalog(dump: str | None, out: Path | None) -> int:
    match dump:
        case "points":
            _emit(points_csv(), out)
        case "lines":
            _emit(lines_csv(), out)
        case "phi":
            _emit(phi_csv(), out)
        case _:
            summary = build_catalog().summary()
            print(
                f"points={summary['points']} lines={summary['lines']} exterior={summary['exterior']} "
                f"rootbases={len(enumerate_phi())} weyl={weyl_group().order}"
            )
    return EXIT_OK


def _print_normalizer(line_id: int) -> None:
    group = weyl_group()
    line = build_catalog().line(line_id)
    print(f"normalizer={len(line_normalizer(group, line))} line={line_id}")
    print(f"order3={len(order3_in_normalizer(group, line))}")


def cmd_weyl(line_id: int, order_only: bool = False, normalizer: int | None = None) -> int:
    group = weyl_group()
    if order_only:
        print(f"order={group.order}")
        return EXIT_OK
    if normalizer is not None:
        _print_normalizer(normalizer)
        return EXIT_OK

    line = build_catalog().line(line_id)
    print(f"order={group.order}")
    histogram = " ".join(f"{k}={v}" for k, v in reflection_pair_orders().items())
    print(f"reflection_pair_orders {histogram}")
    _print_normalizer(line_id)
    pattern = " ".join(f"{a},{b}={n}" for (a, b), n in fold_pattern(group, line).items())
    print(f"fold_pattern {pattern}")
    return EXIT_OK


def cmd_phi(dump: bool, out: Path | None) -> int:
    phi = enumerate_phi()
    if dump or out is not None:
        _emit(phi_csv(phi), out)
    else:
        print(f"rootbases={len(phi)} exterior={len(phi.by_s)}")
    return EXIT_OK


def cmd_verify(cfg: RunConfig, suites: list[str] | None, list_only: bool, freeze_values: bool) -> int:
    if list_only:
        for suite in SUITES.values():
            print(f"{suite.name}: {suite.description}")
        for alias, name in SUITE_ALIASES.items():
            print(f"{alias}: alias of {name}")
        return EXIT_OK

    ctx = SuiteContext(
        table=default_operator_table(),
        line_id=cfg.line_id,
        d_policy=cfg.d_policy,
        field_degree=cfg.field_degree,
    )
    if freeze_values:
        path = cfg.output_path or get_regression_path()
        freeze(ctx, path)
        print(f"frozen {path}")
        return EXIT_OK

    if suites:
        suites = list(dict.fromkeys(SUITE_ALIASES.get(name, name) for name in suites))
    report = run_suites(suites, ctx)
    for line in report.summary_lines():
        print(line)
    out = cfg.output_path or get_output_dir() / "verify-report.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(report.to_json(), encoding="utf-8")
    print(f"report {out}")
    return EXIT_OK if report.passed else EXIT_FAILURE


def build_target(target: str, cfg: RunConfig) -> Subalgebra:
    """
    Build and certify one of the three algebras.

    Raises:
        ClosureError, InvariantViolation: On a failed certificate
        WeylError, FoldPatternError: On an unusable d
    """
    table = default_operator_table()
    if target == "e6":
        return build_e6(table)
    line = build_catalog().line(cfg.line_id)
    if target == "d4":
        return build_dl(line, table)
    d = select_d(weyl_group(), line, cfg.d_policy)
    return build_g2(line, d, table)


def cmd_build(target: str, cfg: RunConfig) -> int:
    sub = build_target(target, cfg)
    if cfg.field_degree > 1:
        failures = verify_closure_over(sub, cfg.field_degree)
        if failures:
            logger.error(f"{sub.name} is not closed over GF(2^{cfg.field_degree}): {failures[0]}")
            return EXIT_FAILURE

    structure = structure_table(sub)
    if cfg.fmt == "json":
        mismatches = verify_table(load_table(structure.to_json(cfg.field_degree)))
        if mismatches:
            logger.error(f"Exported table does not reconstruct brackets {mismatches[:5]}")
            return EXIT_FAILURE

    stem = target if target == "e6" else f"{target}-line{cfg.line_id}"
    out = cfg.output_path or get_output_dir() / f"{stem}.{cfg.fmt}"
    write_table(structure, out, cfg.fmt, cfg.field_degree)
    print(f"dim={sub.dim}")
    print(f"wrote {out}")
    return EXIT_OK


def main(args: list[str] | None = None) -> int:
    """
    Main CLI entry point.

    Args:
        args: Command line arguments (defaults to sys.argv[1:])

    Returns:
        int: Exit code (0 success, 1 verification or closure failure, 2 usage or I/O error)
    """
    if args is None:
        args = sys.argv[1:]

    parser = build_parser()
    try:
        ns = parser.parse_args(args)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    setup_logging(ns.log_level)
    cfg = RunConfig(
        field_degree=getattr(ns, "field", 1),
        line_id=getattr(ns, "line", 0),
        d_policy=getattr(ns, "d", "auto"),
        output_path=getattr(ns, "out", None),
        fmt=getattr(ns, "format", "json"),
    )

    try:
        match ns.command:
            case "catalog":
                return cmd_catalog(ns.dump, ns.out)
            case "weyl":
                return cmd_weyl(ns.line, ns.order, ns.normalizer)
            case "phi":
                return cmd_phi(ns.dump, ns.out)
            case "verify":
                return cmd_verify(cfg, ns.suite, ns.list, ns.freeze)
            case "build":
                return cmd_build(ns.target, cfg)
    except (ClosureError, InvariantViolation, NotStableError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except (ValueError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
