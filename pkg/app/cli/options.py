"""Options shared by several sub-commands."""

import argparse
from collections.abc import Sequence

from app.core.exceptions import SignatureError
from app.models.signature import Signature
from app.services.parser import parse_type

Subparsers = argparse._SubParsersAction  # type: ignore[type-arg]


def common_parent() -> argparse.ArgumentParser:
    """Flags accepted after every sub-command name."""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("-v", "--verbose", action="store_true", help="log per-step decisions (DEBUG)")
    parent.add_argument("--run-id", help="correlation id written to every log record")
    parent.add_argument("--report", metavar="PATH", help="write the machine report (JSON) to PATH")
    return parent


def add_constant_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--const",
        metavar="NAME:TYPE",
        action="append",
        default=[],
        help="declare a nonlogical constant, e.g. --const p:oi (repeatable)",
    )


def signature_from(declarations: Sequence[str]) -> Signature:
    signature = Signature()
    for declaration in declarations:
        name, sep, type_text = declaration.partition(":")
        if not sep or not name.strip():
            raise SignatureError(
                f"--const expects NAME:TYPE, got {declaration!r}", details={"value": declaration}
            )
        signature = signature.declare(name.strip(), parse_type(type_text.strip()))
    return signature


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value
