from typing import Any

from pydantic import BaseModel, Field

from app.core.exceptions import Q0uError


class ErrorDetail(BaseModel):
    code: str
    message: str
    details: Any = None

    @classmethod
    def from_exception(cls, exc: Q0uError) -> "ErrorDetail":
        return cls(code=exc.error_code, message=exc.message, details=exc.details)


class Diagnostic(BaseModel):
    location: str = Field(..., description="Where the problem is, e.g. 'proof lemma1, step 3'")
    message: str
