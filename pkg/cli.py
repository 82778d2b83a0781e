"""
Command line for hadamard-flow.

    python cli.py classify "euler: i*theta^2"
    python cli.py --json evolve --t 0.6931 --input exp "euler: theta"
    python cli.py poles --t 0.5 "euler: theta"
    python cli.py verify "hardy: 1"
    python cli.py --emit-plot-data mu.csv mellin --t 1 --j 1 --a 1 "hardy: 1/(n+1)"

Exit codes: 0 Generates, 10 NotGenerates, 20 Unknown, 1 failed verify,
64 and above for errors.
"""
import argparse
import json
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel, ValidationError

from core.config import settings
from core.exceptions import HadamardFlowError, InvalidParameter
from models.verdict import VerdictKind
from schemas.operator import RunConfig
from services.operator_service import OperatorService

logger = logging.getLogger(__name__)

EXIT_CODES = {
    VerdictKind.GENERATES: 0,
    VerdictKind.NOT_GENERATES: 10,
    VerdictKind.UNKNOWN: 20,
}
VERIFY_FAILED = 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hadamard-flow",
        description="Generation verdicts, evolution and pole reports for Hadamard multipliers.",
    )
    parser.add_argument("--order", type=int, help=f"truncation order N (default {settings.DEFAULT_ORDER})")
    parser.add_argument("--tol", type=float, help="real-axis tolerance for pole reports")
    parser.add_argument("--json", action="store_true", help="print indented JSON")
    parser.add_argument("--emit-plot-data", metavar="PATH", help="mellin: write the sampled grid as CSV")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="decide generation and print the certificate")
    p.add_argument("operator")

    p = sub.add_parser("evolve", help="apply T_t to an input series")
    p.add_argument("operator")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--input", default="exp", help="exp, geom(rho) or a series JSON file")

    p = sub.add_parser("poles", help="locate the poles of f_t")
    p.add_argument("operator")
    p.add_argument("--t", type=float, default=0.5)

    p = sub.add_parser("verify", help="run the semigroup checks")
    p.add_argument("operator")

    p = sub.add_parser("mellin", help="seminorm and growth bound of the Mellin witness")
    p.add_argument("operator")
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--a", type=float, default=1.0)
    return parser


def cmd_classify(service: OperatorService, args: argparse.Namespace) -> Tuple[BaseModel, int]:
    result = service.classify(args.operator)
    return result, EXIT_CODES[VerdictKind(result.verdict)]


def cmd_evolve(service: OperatorService, args: argparse.Namespace) -> Tuple[BaseModel, int]:
    return service.evolve(args.operator, args.t, args.input), 0


def cmd_poles(service: OperatorService, args: argparse.Namespace) -> Tuple[BaseModel, int]:
    return service.poles(args.operator, args.t), 0


def cmd_verify(service: OperatorService, args: argparse.Namespace) -> Tuple[BaseModel, int]:
    result = service.verify(args.operator)
    return result, 0 if result.passed else VERIFY_FAILED


def cmd_mellin(service: OperatorService, args: argparse.Namespace) -> Tuple[BaseModel, int]:
    return service.mellin(args.operator, args.t, args.j, args.a, args.emit_plot_data), 0


COMMANDS: Dict[str, Callable[[OperatorService, argparse.Namespace], Tuple[BaseModel, int]]] = {
    "classify": cmd_classify,
    "evolve": cmd_evolve,
    "poles": cmd_poles,
    "verify": cmd_verify,
    "mellin": cmd_mellin,
}


def emit(payload: Dict[str, Any], as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, indent=2))
        return
    for key, value in payload.items():
        if isinstance(value, (dict, list, tuple)):
            value = json.dumps(value)
        print(f"{key}: {value}")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level.upper())

    overrides = {k: v for k, v in (("order", args.order), ("tol", args.tol)) if v is not None}
    try:
        config = RunConfig(**overrides)
    except ValidationError as e:
        print(f"error: invalid configuration: {e.errors()[0]['msg']}", file=sys.stderr)
        return InvalidParameter.exit_code

    try:
        result, code = COMMANDS[args.command](OperatorService(config), args)
    except HadamardFlowError as e:
        logger.debug(f"{args.command} failed", exc_info=True)
        print(f"error: {type(e).__name__}: {e.detail}", file=sys.stderr)
        return e.exit_code

    emit(result.model_dump(), args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
