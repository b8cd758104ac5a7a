"""Correlation context for log records.

The CLI equivalent of a per-request middleware: every invocation gets a run
ID, and the kernel tags records emitted while a proof is checked with its
label.
"""

import uuid
from collections.abc import Iterator
from contextlib import contextmanager

from app.core.logging import proof_label_var, run_id_var


@contextmanager
def run_context(run_id: str | None = None) -> Iterator[str]:
    """Bind a correlation ID for one CLI invocation.

    - If ``run_id`` is given (``--run-id``), that value is reused.
    - Otherwise a fresh UUID4 hex string is generated.
    """
    value = run_id or uuid.uuid4().hex
    token = run_id_var.set(value)
    try:
        yield value
    finally:
        run_id_var.reset(token)


@contextmanager
def proof_context(label: str) -> Iterator[None]:
    token = proof_label_var.set(label)
    try:
        yield
    finally:
        proof_label_var.reset(token)
