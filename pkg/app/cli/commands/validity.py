import argparse
import logging

from app.cli.options import Subparsers, add_constant_option, positive_int, signature_from
from app.config import settings
from app.schemas.common import Diagnostic
from app.schemas.verdict import Verdict
from app.services.parser import parse_wff
from app.services.semantics import find_counter_model

logger = logging.getLogger(__name__)


def register(subparsers: Subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "validity",
        parents=[parent],
        help="search the standard models with 1..K individuals for a counter-model",
    )
    parser.add_argument("wff", help="wff of type o")
    parser.add_argument(
        "--max-base",
        type=positive_int,
        default=settings.max_base,
        help=f"largest number of individuals tried (default: {settings.max_base})",
    )
    parser.add_argument("--cap", type=positive_int, help="domain size cap")
    add_constant_option(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> Verdict:
    wff = parse_wff(args.wff, signature_from(args.const))
    counter = find_counter_model(wff, args.max_base, cap=args.cap)
    if counter is None:
        print(f"valid up to base size {args.max_base}")
        return Verdict(command="validity", status="pass")
    described = counter.describe()
    print(f"counter-model: {described}")
    return Verdict(
        command="validity",
        status="fail",
        diagnostics=[
            Diagnostic(
                location=f"base size {len(counter.model.frame.base)}",
                message=f"{args.wff} is false in {counter.model!r}",
            )
        ],
        counter_model=described,
    )
