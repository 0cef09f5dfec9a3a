"""Command-line entry point.

    python -m wickcalc expand --stats fermi --model abstract "A(1) A(2) A(3)"
    python -m wickcalc check --stats fermi --modes 4 "c(1) c+(2) c(3) c+(4)"
"""
import argparse
import logging
import sys
from typing import List, Optional, Sequence, Tuple

from pydantic import ValidationError

from .command_orchestrator import EXIT_PARSE_ERROR, CommandOptions, CommandOrchestrator, failure_result
from .display_results import display_results
from .settings import get_settings

logger = logging.getLogger(__name__)


def _frequencies(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got {text!r}") from None


def _describe_invalid(error: ValidationError) -> str:
    """``--modes: Input should be greater than or equal to 1`` per rejected flag."""
    problems = []
    for item in error.errors():
        flag = "--" + "-".join(str(part) for part in item["loc"]).replace("_", "-")
        problems.append(f"{flag}: {item['msg']}")
    return "invalid option " + "; ".join(problems)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wickcalc", description="Normal ordering and contractions by Wick's theorem")
    subparsers = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--stats", choices=["fermi", "bose"], default="fermi", help="exchange statistics")
    common.add_argument("--model", choices=["abstract", "fermisea", "bcs", "bec"],
                        help="reference state (default: abstract for expand/vev, fermisea otherwise)")
    common.add_argument("--model-file", help="JSON model configuration")
    common.add_argument("--time-ordered", action="store_true", help="use the time-ordered product")
    common.add_argument("--format", choices=["text", "json"], default="text", dest="output_format")
    common.add_argument("--oracle-check", action="store_true", help="verify the result on the Fock oracle")
    common.add_argument("--modes", type=int, help="number of single-particle modes")
    common.add_argument("--cutoff", type=int, help="bosonic occupation cutoff of the oracle space")
    common.add_argument("--filled", type=int, default=0, help="filled levels of the Fermi sea")
    common.add_argument("--pairs", help="BCS amplitudes u:v,u:v,...")
    common.add_argument("--density", type=float, default=0.0, help="condensate density N/V")
    common.add_argument("--volume", type=float, default=1.0, help="condensate volume V")
    common.add_argument("--frequencies", type=_frequencies, help="level energies w1,w2,...")
    common.add_argument("--workers", type=int, help="threads for pair-partition sums")

    expand = subparsers.add_parser("expand", parents=[common], help="Wick expansion of a product")
    expand.add_argument("expression")
    expand.add_argument("--evaluate", action="store_true", help="replace contractions by model values")
    expand.add_argument("--expand-fields", action="store_true", help="split residual fields into +/- parts")
    expand.add_argument("--summary", action="store_true", help="print term counts first")

    vev = subparsers.add_parser("vev", parents=[common], help="reference-state expectation value")
    vev.add_argument("expression")

    green = subparsers.add_parser("green", parents=[common], help="free n-particle Green function")
    green.add_argument("--xs", required=True, help="points mode@time,... for psi")
    green.add_argument("--ys", required=True, help="points mode@time,... for psi+")

    check = subparsers.add_parser("check", parents=[common], help="verify an expansion on the Fock oracle")
    check.add_argument("expression")
    return parser


def run_command(argv: Optional[Sequence[str]] = None) -> Tuple[int, str]:
    """Run one command and return (exit code, rendered output)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return (EXIT_PARSE_ERROR if e.code else 0), ""

    try:
        options = _options(args)
    except ValidationError as e:
        logger.warning(f"Rejected options for {args.command}: {e}")
        failure = failure_result(args.command, ValueError(_describe_invalid(e)), EXIT_PARSE_ERROR)
        return EXIT_PARSE_ERROR, display_results(failure, args.output_format)
    orchestrator = CommandOrchestrator()
    result = orchestrator.process_request(args.command, getattr(args, "expression", ""), options)
    return result["exit_code"], display_results(result, options.output_format)


def _options(args: argparse.Namespace) -> CommandOptions:
    return CommandOptions(
        statistics=args.stats,
        model=args.model,
        model_file=args.model_file,
        time_ordered=args.time_ordered,
        output_format=args.output_format,
        oracle_check=args.oracle_check,
        modes=args.modes,
        cutoff=args.cutoff,
        filled=args.filled,
        pairs=args.pairs,
        density=args.density,
        volume=args.volume,
        frequencies=args.frequencies,
        evaluate=getattr(args, "evaluate", False),
        expand_fields=getattr(args, "expand_fields", False),
        summary=getattr(args, "summary", False),
        xs=getattr(args, "xs", None),
        ys=getattr(args, "ys", None),
        workers=args.workers,
    )


def main() -> None:
    settings = get_settings()
    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    code, output = run_command()
    stream = sys.stdout if code in (0, 1) else sys.stderr
    stream.write(output)
    sys.exit(code)


if __name__ == "__main__":
    main()
