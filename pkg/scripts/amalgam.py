#!/usr/bin/env python3
"""Batch front-end for the B-valued free probability engine.

Usage:
  amalgam nc --n 4 --kreweras --mobius
  amalgam moments --spec a.json --order 4
  amalgam check-rdiag --spec pair.json --order 4
  amalgam verify-product-pair --seed 7 --dim 2 --order 3 --count 20 --workers 4

Exit codes: 0 = output produced / all checks pass, 1 = a diagnostic was
refuted (witness in the report), 2 = usage, format or input error.
"""

import argparse
import asyncio
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from config.settings import get_settings
from src.constructions.boxed import boxed_convolution
from src.diagnostics.evenness import is_b_even
from src.diagnostics.harness import run_seeds
from src.diagnostics.rdiagonal import determining_series, is_r_diagonal
from src.diagnostics.trace import check_b_trace
from src.diagnostics.verdict import Verdict
from src.engine.families import JointCumulantSpec, JointMomentSpec, JointSpec
from src.engine.transforms import cumulants_from_moments, moments_from_cumulants
from src.errors import AmalgamError, ArgumentError, PreconditionError
from src.reports.generator import ReportGenerator, lattice_report
from src.storage.spec_files import load_matrix, load_spec, spec_to_dict

logger = logging.getLogger("amalgam")

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2


class CommandUsageError(Exception):
    """Raised instead of argparse's print-and-exit."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise CommandUsageError(f"{self.prog}: {message}")


@dataclass
class CommandOutcome:
    code: int
    text: str
    out: Optional[Path] = None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", type=Path, default=None, help="Write the report here instead of stdout")
    common.add_argument("--format", choices=["json", "text"], default=None, help="Report format")
    common.add_argument("--max-n", type=int, default=None, help="Enumeration safety cap")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Warnings only on stderr")

    parser = _Parser(prog="amalgam", description="Exact operator-valued free probability")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    nc = commands.add_parser("nc", parents=[common], help="Dump NC(n)")
    nc.add_argument("--n", type=int, required=True)
    nc.add_argument("--even", action="store_true", help="Only partitions with even blocks")
    nc.add_argument("--kreweras", action="store_true", help="Include Kreweras complements")
    nc.add_argument("--mobius", action="store_true", help="Include μ(π, 1_n)")

    for name, help_text in (
        ("moments", "Moments from cumulants"),
        ("cumulants", "Cumulants from moments"),
        ("check-trace", "B-trace check"),
        ("check-rdiag", "R-diagonality of a pair"),
        ("det-series", "Determining series of an R-diagonal pair"),
    ):
        sub = commands.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("--spec", type=Path, required=True)
        sub.add_argument("--order", type=int, default=None)

    even = commands.add_parser("check-even", parents=[common], help="B-evenness of one variable")
    even.add_argument("--spec", type=Path, required=True)
    even.add_argument("--var", type=int, default=1)
    even.add_argument("--order", type=int, default=None)

    boxconv = commands.add_parser("boxconv", parents=[common], help="Boxed convolution f ⊛ g")
    boxconv.add_argument("--f", type=Path, required=True)
    boxconv.add_argument("--g", type=Path, required=True)
    boxconv.add_argument("--gargs", default="trivial", help="trivial | symm:B0FILE")

    harness = get_settings().harness
    pair = commands.add_parser(
        "verify-product-pair",
        aliases=["verify-thm27"],
        parents=[common],
        help="Products of free B-even elements form an R-diagonal pair",
    )
    pair.add_argument("--seed", type=int, default=0)
    pair.add_argument("--dim", type=int, default=harness.dim)
    pair.add_argument("--order", type=int, default=harness.order)
    pair.add_argument("--count", type=int, default=harness.count)
    pair.add_argument("--workers", type=int, default=harness.workers)
    pair.add_argument(
        "--depth", type=int, default=harness.depth, help="Reconstruction depth (default order // 2)"
    )
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    elif args.quiet:
        logging.getLogger().setLevel(logging.WARNING)


def _as_cumulants(spec: JointSpec) -> JointCumulantSpec:
    if isinstance(spec, JointMomentSpec):
        logger.info("Converting moment spec to cumulants")
        return cumulants_from_moments(spec)
    return spec


def _as_moments(spec: JointSpec) -> JointMomentSpec:
    if isinstance(spec, JointCumulantSpec):
        logger.info("Converting cumulant spec to moments")
        return moments_from_cumulants(spec)
    return spec


class _Runner:
    """Dispatches one parsed command line to its handler."""

    def __init__(self, args: argparse.Namespace, argv: Sequence[str]):
        settings = get_settings()
        self.args = args
        self.command = ["amalgam", *argv]
        self.format = args.format or settings.output.format
        self.reports = ReportGenerator(settings.templates_dir, settings.output.indent)

    def run(self) -> tuple[int, str]:
        handlers: dict[str, Callable[[], tuple[int, str]]] = {
            "nc": self.nc,
            "moments": self.moments,
            "cumulants": self.cumulants,
            "check-even": self.check_even,
            "check-trace": self.check_trace,
            "check-rdiag": self.check_rdiag,
            "det-series": self.det_series,
            "boxconv": self.boxconv,
            "verify-product-pair": self.verify_product_pair,
            "verify-thm27": self.verify_product_pair,
        }
        return handlers[self.args.command]()

    # Output helpers

    def _spec(self, spec: JointSpec) -> tuple[int, str]:
        if self.format == "text":
            return EXIT_OK, self.reports.render_text("spec.txt.j2", spec=spec_to_dict(spec))
        return EXIT_OK, self.reports.to_json(spec_to_dict(spec))

    def _report(
        self,
        result: dict[str, Any],
        template: str,
        context: dict[str, Any],
        seed: Optional[int] = None,
    ) -> str:
        if self.format == "text":
            return self.reports.render_text(template, command=self.command, **context)
        return self.reports.to_json(self.reports.envelope(self.command, result, seed))

    def _verdict(self, verdict: Verdict) -> tuple[int, str]:
        data = verdict.to_json_dict()
        text = self._report(data, "verdict.txt.j2", {"verdict": data})
        return (EXIT_OK if verdict.passed else EXIT_REFUTED), text

    # Handlers

    def nc(self) -> tuple[int, str]:
        report = lattice_report(self.args.n, self.args.even, self.args.kreweras, self.args.mobius)
        data = report.model_dump(mode="json")
        return EXIT_OK, self._report(data, "nc.txt.j2", {"report": data})

    def moments(self) -> tuple[int, str]:
        spec = load_spec(self.args.spec)
        if not isinstance(spec, JointCumulantSpec):
            raise ArgumentError("moments needs a cumulant spec")
        return self._spec(moments_from_cumulants(spec, self.args.order))

    def cumulants(self) -> tuple[int, str]:
        spec = load_spec(self.args.spec)
        if not isinstance(spec, JointMomentSpec):
            raise ArgumentError("cumulants needs a moment spec")
        return self._spec(cumulants_from_moments(spec, self.args.order))

    def check_even(self) -> tuple[int, str]:
        return self._verdict(is_b_even(load_spec(self.args.spec), self.args.var, self.args.order))

    def check_trace(self) -> tuple[int, str]:
        return self._verdict(check_b_trace(_as_moments(load_spec(self.args.spec)), self.args.order))

    def check_rdiag(self) -> tuple[int, str]:
        return self._verdict(is_r_diagonal(_as_cumulants(load_spec(self.args.spec)), self.args.order))

    def det_series(self) -> tuple[int, str]:
        spec = _as_cumulants(load_spec(self.args.spec))
        order = self.args.order if self.args.order is not None else spec.N // 2
        try:
            series = determining_series(spec, order)
        except PreconditionError as e:
            if e.verdict is None:
                raise
            logger.warning(f"Precondition failed: {e}")
            return self._verdict(e.verdict)
        result = {
            "f": spec_to_dict(series.f),
            "g": spec_to_dict(series.g),
            "recon": series.recon.to_json_dict(),
            "collapsed": series.collapsed.to_json_dict(),
        }
        text = self._report(result, "det_series.txt.j2", {"result": result})
        return (EXIT_OK if series.recon.passed else EXIT_REFUTED), text

    def boxconv(self) -> tuple[int, str]:
        f, g = load_spec(self.args.f), load_spec(self.args.g)
        if not isinstance(f, JointCumulantSpec) or not isinstance(g, JointCumulantSpec):
            raise ArgumentError("boxconv needs cumulant (series) specs")
        mode, _, b0_file = self.args.gargs.partition(":")
        if mode == "trivial" and not b0_file:
            return self._spec(boxed_convolution(f, g))
        if mode == "symm" and b0_file:
            return self._spec(boxed_convolution(f, g, "symm", load_matrix(b0_file)))
        raise ArgumentError(f"--gargs must be 'trivial' or 'symm:B0FILE', got {self.args.gargs!r}")

    def verify_product_pair(self) -> tuple[int, str]:
        args = self.args
        if args.count < 1 or args.workers < 1:
            raise ArgumentError("--count and --workers must be positive")
        if args.depth is not None and args.depth < 0:
            raise ArgumentError("--depth must be non-negative")
        seeds = list(range(args.seed, args.seed + args.count))
        summary = asyncio.run(run_seeds(seeds, args.dim, args.order, args.workers, args.depth))
        data = summary.to_json_dict()
        text = self._report(data, "harness.txt.j2", {"summary": data}, seed=args.seed)
        return (EXIT_OK if summary.passed else EXIT_REFUTED), text


def run_command(argv: Sequence[str]) -> CommandOutcome:
    """Parse and execute one command line.

    Returns:
        Exit code, report text and the requested output path
    """
    argv = list(argv)
    try:
        args = build_parser().parse_args(argv)
    except CommandUsageError as e:
        print(e, file=sys.stderr)
        return CommandOutcome(EXIT_USAGE, "")

    _configure_logging(args)
    lattice = get_settings().lattice
    default_cap = lattice.max_n
    if args.max_n is not None:
        lattice.max_n = args.max_n

    try:
        code, text = _Runner(args, argv).run()
    except (AmalgamError, OSError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return CommandOutcome(EXIT_USAGE, "", args.out)
    finally:
        lattice.max_n = default_cap
    return CommandOutcome(code, text, args.out)


def main(argv: Optional[Sequence[str]] = None) -> int:
    outcome = run_command(sys.argv[1:] if argv is None else argv)
    if outcome.text:
        if outcome.out is not None:
            try:
                with open(outcome.out, "w", encoding="utf-8") as handle:
                    handle.write(outcome.text)
            except OSError as e:
                logger.error(f"Cannot write {outcome.out}: {e}")
                return EXIT_USAGE
        else:
            sys.stdout.write(outcome.text)
    return outcome.code


if __name__ == "__main__":
    raise SystemExit(main())
