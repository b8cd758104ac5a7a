"""
Entry point of the ``q0u`` command.

Exit codes: 0 when the verdict passes, 1 for a logical rejection (rejected
proof, counter-model, failed self-check) and 2 for usage, parse and file
errors. Verdict lines go to stdout and JSON logs to stderr.
"""

import argparse
import logging
import sys
from collections.abc import Sequence

from app.cli.options import common_parent
from app.cli.router import register_commands
from app.config import settings
from app.core.context import run_context
from app.core.exceptions import EXIT_OK, EXIT_REJECTED, EXIT_USAGE, Q0uError, log_error
from app.core.logging import configure_logging
from app.infra.files import write_text
from app.schemas.common import Diagnostic, ErrorDetail
from app.schemas.verdict import Verdict

logger = logging.getLogger(__name__)


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="q0u",
        description=f"{settings.app_name}: proof checking and finite-model semantics",
    )
    parser.add_argument("--version", action="version", version=settings.app_version)
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    register_commands(subparsers, common_parent())
    return parser


def _error_verdict(command: str, exc: Q0uError) -> Verdict:
    return Verdict.model_validate(
        {
            "command": command,
            "status": "fail",
            "diagnostics": [Diagnostic(location=command, message=exc.message)],
            "error": ErrorDetail.from_exception(exc),
        }
    )


def main(argv: Sequence[str] | None = None) -> int:
    args = create_parser().parse_args(argv)
    configure_logging(verbose=args.verbose)

    with run_context(args.run_id) as run_id:
        logger.info("Command started", extra={"command": args.command})
        try:
            verdict: Verdict = args.handler(args) or Verdict(command=args.command, status="pass")
            exit_code = EXIT_OK if verdict.passed else EXIT_REJECTED
        except Q0uError as exc:
            log_error(exc, command=args.command)
            print(f"error [{exc.error_code}]: {exc.message}")
            verdict = _error_verdict(args.command, exc)
            exit_code = exc.exit_code
        except Exception as exc:
            logger.error("Unexpected error", exc_info=True, extra={"command": args.command})
            internal = Q0uError(f"unexpected error: {exc}", details={"type": type(exc).__name__})
            print(f"error [{internal.error_code}]: {internal.message}")
            verdict = _error_verdict(args.command, internal)
            exit_code = EXIT_USAGE

        if args.report:
            verdict.run_id = run_id
            try:
                write_text(args.report, verdict.model_dump_json(indent=2))
            except Q0uError as exc:
                log_error(exc, command=args.command)
                exit_code = EXIT_USAGE

        logger.info("Command finished", extra={"command": args.command, "exit_code": exit_code})
    return exit_code


def run() -> None:
    sys.exit(main())
