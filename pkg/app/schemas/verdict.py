"""
The machine report written by ``--report``.

Every sub-command produces one ``Verdict``; its JSON schema is printed by
``q0u schema`` and is the published contract for the report file.
"""

from typing import Any, Literal

from pydantic import BaseModel, Field, model_validator

from app.models.proof import CheckResult
from app.schemas.common import Diagnostic, ErrorDetail
from app.schemas.soundness import SoundnessReport

Command = Literal["check", "eval", "validity", "selfcheck", "tactic", "schema"]
Status = Literal["pass", "fail"]


class ProofVerdict(BaseModel):
    label: str
    accepted: bool
    reason: str = ""
    section: str | None = None
    step: int | None = Field(None, ge=1, description="1-based number of the rejected step")
    trusted_steps: list[int] = Field(default_factory=list, description="1-based step numbers")
    trusted_theorem_steps: list[int] = Field(
        default_factory=list, description="1-based theorem-section step numbers"
    )
    notes: list[str] = Field(default_factory=list)

    @classmethod
    def from_result(cls, label: str, result: CheckResult) -> "ProofVerdict":
        return cls(
            label=label,
            accepted=result.accepted,
            reason=result.reason,
            section=result.section,
            step=None if result.step is None else result.step + 1,
            trusted_steps=[i + 1 for i in result.trusted_steps],
            trusted_theorem_steps=[i + 1 for i in result.trusted_theorem_steps],
            notes=list(result.notes),
        )

    @property
    def location(self) -> str:
        if self.step is None:
            return f"proof {self.label}"
        return f"proof {self.label}, {self.section} step {self.step}"


class Verdict(BaseModel):
    command: Command
    status: Status
    run_id: str = "-"
    diagnostics: list[Diagnostic] = Field(default_factory=list)
    proofs: list[ProofVerdict] = Field(default_factory=list)
    value: str | None = Field(None, description="Rendered partial value (eval)")
    profile: list[dict[str, str]] = Field(default_factory=list)
    counter_model: dict[str, Any] | None = None
    selfcheck: SoundnessReport | None = None
    error: ErrorDetail | None = None

    @model_validator(mode="after")
    def fail_has_diagnostics(self) -> "Verdict":
        if self.status == "fail" and not self.diagnostics:
            raise ValueError("a failing verdict needs at least one diagnostic")
        return self

    @property
    def passed(self) -> bool:
        return self.status == "pass"
