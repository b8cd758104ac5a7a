"""
Shared fixtures for all tests.

Models are built over the catalog signature (c, d : i; p : oi; k : ii;
r : oii) with one and two individuals, the sizes the self-check uses.
"""

import json
from collections.abc import Iterator
from pathlib import Path

import pytest

from app.config import settings
from app.models.signature import Signature
from app.services.catalog import CATALOG_SIGNATURE, catalog_model
from app.services.semantics import Frame, Model

MODEL_DOCUMENT = {
    "base": ["a", "b"],
    "constants": {
        "c": {"type": "i", "value": "a"},
        "p": {"type": "oi", "value": {"entries": [["a", "T"], ["b", "F"]]}},
        "k": {"type": "ii", "value": {"entries": [["a", "b"], ["b", None]]}},
    },
    "cap": 1000,
}

# --- Fixtures ---


@pytest.fixture
def signature() -> Signature:
    return CATALOG_SIGNATURE


@pytest.fixture
def frame1() -> Frame:
    return Frame(["a"])


@pytest.fixture
def frame2() -> Frame:
    return Frame(["a", "b"])


@pytest.fixture
def model2(frame2: Frame) -> Model:
    """c = a, d = b, p true only at a, k = {a -> b}, r the identity relation."""
    return catalog_model(frame2)


@pytest.fixture
def model_file(tmp_path: Path) -> Path:
    path = tmp_path / "model.json"
    path.write_text(json.dumps(MODEL_DOCUMENT), encoding="utf-8")
    return path


@pytest.fixture
def small_cap() -> Iterator[int]:
    """Temporarily lower the domain size cap."""
    previous = settings.domain_size_cap
    settings.domain_size_cap = 10
    yield settings.domain_size_cap
    settings.domain_size_cap = previous
