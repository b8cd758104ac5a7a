"""Structured JSON logging configuration for the application."""

import logging
import sys
from contextvars import ContextVar

from pythonjsonlogger.json import JsonFormatter as _JsonFormatter

from app.config import settings

# Per-invocation correlation ID, set by run_context(), read by _ContextFilter
run_id_var: ContextVar[str] = ContextVar("run_id", default="-")
# Label of the proof currently being checked, set by proof_context()
proof_label_var: ContextVar[str] = ContextVar("proof_label", default="-")


class _ContextFilter(logging.Filter):
    """Injects the current run_id and proof label into every log record."""

    def filter(self, record: logging.LogRecord) -> bool:
        record.run_id = run_id_var.get()
        record.proof = proof_label_var.get()
        return True


class _AppJsonFormatter(_JsonFormatter):
    """Extends the standard JSON formatter with service-level metadata."""

    def add_fields(
        self,
        log_record: dict[str, object],
        record: logging.LogRecord,
        message_dict: dict[str, object],
    ) -> None:
        super().add_fields(log_record, record, message_dict)
        log_record.setdefault("service", settings.app_name)
        log_record.setdefault("version", settings.app_version)
        log_record.setdefault("env", settings.env)


def configure_logging(verbose: bool = False) -> None:
    """Set up structured JSON logging for the whole process.

    Call once at the start of ``main()`` before any command runs. Records go to
    stderr; stdout carries verdicts only.

    Log levels:
        DEBUG: per-step kernel decisions, domain sizes (settings.debug or --verbose)
        INFO: command start/finish, per-proof verdicts, sweep summaries
        WARNING: rejected proofs, counter-models, trusted derived-rule steps
        ERROR: usage, parse and I/O errors, unexpected exceptions
    """
    log_level = logging.DEBUG if (settings.debug or verbose) else logging.INFO

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(
        _AppJsonFormatter(
            fmt="%(asctime)s %(name)s %(levelname)s %(message)s %(run_id)s %(proof)s",
            datefmt="%Y-%m-%dT%H:%M:%SZ",
        )
    )
    handler.addFilter(_ContextFilter())

    root = logging.getLogger()
    root.handlers.clear()
    root.addHandler(handler)
    root.setLevel(log_level)
