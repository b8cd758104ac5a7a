"""Reads model description files (JSON) into a signature and a ``Model``."""

import logging
from pathlib import Path

from pydantic import ValidationError

from app.core.exceptions import ModelDefinitionError
from app.infra.files import read_text
from app.models.signature import Signature
from app.models.wff import Const
from app.schemas.model_file import ModelFile
from app.services.parser import parse_type
from app.services.semantics import Model, build_model

logger = logging.getLogger(__name__)


def parse_model_file(text: str, where: str = "<model>") -> ModelFile:
    try:
        return ModelFile.model_validate_json(text)
    except ValidationError as exc:
        errors = [
            {"location": ".".join(str(p) for p in err["loc"]), "message": err["msg"]}
            for err in exc.errors()
        ]
        first = errors[0] if errors else {"location": "", "message": "invalid document"}
        raise ModelDefinitionError(
            f"{where}: {first['location'] or 'document'}: {first['message']}",
            details={"errors": errors},
        ) from exc


def model_from_document(document: ModelFile, cap: int | None = None) -> tuple[Signature, Model]:
    """``cap`` overrides the cap in the document; settings apply when neither is given."""
    signature = Signature()
    for name, entry in document.constants.items():
        signature = signature.declare(name, parse_type(entry.type))
    values = {
        Const(name, signature.lookup(name)): document.term(name) for name in document.constants
    }
    model = build_model(document.base, values, cap if cap is not None else document.cap)
    return signature, model


def load_model(path: str | Path, cap: int | None = None) -> tuple[Signature, Model]:
    document = parse_model_file(read_text(path), str(path))
    signature, model = model_from_document(document, cap)
    logger.info(
        "Model loaded",
        extra={"path": str(path), "base_size": len(model.frame.base), "constants": len(signature.constants)},
    )
    return signature, model
