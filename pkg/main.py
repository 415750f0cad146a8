"""
Hankel Lab - Command-line entry point.

Each experiment is a subcommand; flags are merged over the template
defaults of the subcommand and echoed into the report. Environment
variables are not consulted.

Exit codes:
    0  every verdict passed
    1  at least one verdict failed
    2  invalid configuration, unreadable input or failed export
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

# Exporters register themselves on import
import csv_exporter  # noqa: F401
import json_exporter  # noqa: F401
import markdown_exporter  # noqa: F401
from export_base import ExportError, ExportManager
from experiment_engine import ExperimentConfig, ExperimentEngine
from experiment_templates import get_template, get_template_ids
from utils import setup_logging

_logger = logging.getLogger("hankel_lab")

# CLI flag -> config parameter
PARAMETER_FLAGS = {
    "n": "n",
    "d": "d",
    "p": "p",
    "samples": "samples",
    "seed": "seed",
    "tol": "tol",
    "max_iter": "max_iter",
    "mode": "mode",
    "variant": "variant",
    "pattern": "pattern",
    "trials": "trials",
    "grid": "grid",
    "k_max": "k_max",
    "matrix": "matrix",
    "matrix_out": "matrix_out",
    "symbol": "symbol",
    "table_size": "table_size",
    "support_bound": "support_bound",
    "iterations": "iterations",
    "alpha": "alpha",
    "diag_sizes": "diag_sizes",
    "symbol_bound": "symbol_bound",
    "max_omega": "max_omega",
    "mc_max_d": "mc_max_d",
    "fixtures": "fixture_path",
}


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subparser per experiment template."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, nargs="+",
                        help="N list (hilbert, freeze) or matrix sizes (embed-verify, schatten-embed, schur)")
    common.add_argument("--d", type=int, nargs="+", help="Dimensions / phi_d degrees")
    common.add_argument("--p", type=float, nargs="+", help="Exponents p")
    common.add_argument("--samples", type=int, help="Monte Carlo sample count")
    common.add_argument("--seed", type=int, help="Base seed")
    common.add_argument("--tol", type=float, help="Power-iteration tolerance")
    common.add_argument("--max-iter", dest="max_iter", type=int, help="Power-iteration cap (hilbert)")
    common.add_argument("--mode", choices=["svd", "matfree"], help="Spectral norm method (hilbert)")
    common.add_argument("--variant", help="Hilbert kernel variant (hilbert)")
    common.add_argument("--pattern", help="Schur pattern (schur)")
    common.add_argument("--trials", type=int, help="Number of random trials")
    common.add_argument("--grid", type=int, help="Quadrature grid size (nehari)")
    common.add_argument("--k-max", dest="k_max", type=int, help="Largest Fourier index (nehari)")
    common.add_argument("--matrix", help="Matrix CSV (i,j,re,im) to embed, at most 6x6 (embed-verify)")
    common.add_argument("--matrix-out", dest="matrix_out", help="Write the restricted matrix M0 as CSV (embed-verify)")
    common.add_argument("--symbol", help="Polynomial CSV (n,re,im) to add to the suite (inequalities)")
    common.add_argument("--table-size", dest="table_size", type=int, help="Prime table size (schur bennett_tails, freeze)")
    common.add_argument("--support-bound", dest="support_bound", type=int, help="Largest support index of random symbols (schur)")
    common.add_argument("--iterations", type=int, help="Search iterations (schur multiplier_search)")
    common.add_argument("--alpha", type=float, help="Decay of the diagonal family k^-alpha (schatten-embed)")
    common.add_argument("--diag-sizes", dest="diag_sizes", type=int, nargs="+", help="Diagonal family sizes (schatten-embed)")
    common.add_argument("--symbol-bound", dest="symbol_bound", type=int, help="Support bound of Omega >= 2 symbols (schatten-embed)")
    common.add_argument("--max-omega", dest="max_omega", type=int, help="Largest Omega of random supports (inequalities)")
    common.add_argument("--mc-max-d", dest="mc_max_d", type=int, help="Largest d with a Monte Carlo H^1 norm (phi-d)")
    common.add_argument("--fixtures", help="Fixture file to write (freeze)")
    common.add_argument("--out", help="Primary output path; other formats share its stem")
    common.add_argument("--format", dest="formats", action="append", choices=["csv", "markdown"],
                        help="Extra export format besides JSON (repeatable)")
    common.add_argument("--workers", type=int, default=1, help="Threads for Monte Carlo chunks")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")

    parser = argparse.ArgumentParser(prog="hankel-lab", description="Numerical experiments on multiplicative Hankel forms")
    sub = parser.add_subparsers(dest="command", required=True)
    for command in get_template_ids():
        sub.add_parser(command, parents=[common], help=get_template(command).description)
    return parser


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    """Merge parsed flags over the template defaults of the chosen subcommand."""
    overrides: Dict[str, Any] = {param: getattr(args, flag) for flag, param in PARAMETER_FLAGS.items()}
    # JSON last so that it records the paths of the other exports
    formats: List[str] = [f for f in (args.formats or []) if f != "json"] + ["json"]
    return ExperimentConfig.from_template(args.command, overrides, output=args.out, formats=formats)


def _print_progress(step: int, total: int, message: str) -> None:
    _logger.info("(%d/%d) %s", step, total, message)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one experiment from the command line.

    Returns:
        int: The process exit code.
    """
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)

    try:
        config = config_from_args(args)
        engine = ExperimentEngine(progress_callback=_print_progress, workers=args.workers)
        report = engine.run(config)
        paths = ExportManager.export_to_formats(report, config.formats, output_path=config.output)
    except (ValueError, ExportError, OSError) as e:
        _logger.error("%s: %s", args.command, e)
        return 2

    failed = report.failed_verdicts()
    print(f"{args.command}: {len(report.verdicts) - len(failed)}/{len(report.verdicts)} verdicts passed "
          f"in {report.duration_seconds:.2f} s")
    for v in failed:
        print(f"  FAILED {v.name} {v.detail} (value={v.value}, bound={v.bound}, tol={v.tolerance})")
    for format_id, path in paths.items():
        print(f"  {format_id}: {path}")
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
