"""
Proofs and per-step justifications.

A proof from hypotheses H is the pair of sequences S₁ (``theorem_section``, a
proof without hypotheses) and S₂ (``main_section``). Indices in justifications
are 0-based and always refer to strictly preceding steps of the same section,
except ``TheoremImport`` which indexes ``theorem_section``.
"""

import enum
from dataclasses import dataclass, field

from app.core.exceptions import RuleApplicationError
from app.models.types import TypeSymbol
from app.models.wff import Wff


class AxiomSchema(str, enum.Enum):
    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    A4 = "A4"
    A5 = "A5"
    A6 = "A6"
    A7 = "A7"
    A8 = "A8"
    A9 = "A9"
    A10 = "A10"
    A11 = "A11"
    A12 = "A12"
    A13 = "A13"


class PathStep(str, enum.Enum):
    FUN = "fun"
    ARG = "arg"
    BODY = "body"


# Addresses one subtree; a binder occurrence has no path (Abs only has BODY)
OccurrencePath = tuple[PathStep, ...]


class DerivedRule(str, enum.Enum):
    R1_PRIME = "r1prime"
    R2_PRIME = "r2prime"
    BETA = "beta"
    UNIV_INST = "univinst"
    UNIV_GEN = "univgen"
    TAUT = "taut"
    DEDUCTION = "deduction"
    LEMMA2 = "lemma2"
    SELF_EQ = "selfeq"


Param = Wff | TypeSymbol


@dataclass(frozen=True)
class Axiom:
    schema: AxiomSchema
    params: dict[str, Param] = field(default_factory=dict)


@dataclass(frozen=True)
class Hyp:
    index: int


@dataclass(frozen=True)
class TheoremImport:
    index: int


@dataclass(frozen=True)
class R1:
    eq_step: int
    target_step: int
    path: OccurrencePath


@dataclass(frozen=True)
class R2:
    minor: int
    major: int


@dataclass(frozen=True)
class Derived:
    rule: DerivedRule
    premises: tuple[int, ...] = ()
    params: dict[str, "Param | Proof | OccurrencePath"] = field(default_factory=dict)


Justification = Axiom | Hyp | TheoremImport | R1 | R2 | Derived


@dataclass(frozen=True)
class ProofStep:
    wff: Wff
    justification: Justification


@dataclass(frozen=True)
class Proof:
    main_section: tuple[ProofStep, ...]
    conclusion: Wff
    hypotheses: tuple[Wff, ...] = ()
    theorem_section: tuple[ProofStep, ...] = ()
    label: str = ""

    @classmethod
    def of(
        cls,
        steps: list[ProofStep],
        hypotheses: tuple[Wff, ...] = (),
        theorem_section: tuple[ProofStep, ...] = (),
        label: str = "",
    ) -> "Proof":
        """Build a proof whose conclusion is its last main-section step."""
        if not steps:
            raise RuleApplicationError("proof", "the main section is empty")
        return cls(
            main_section=tuple(steps),
            conclusion=steps[-1].wff,
            hypotheses=hypotheses,
            theorem_section=theorem_section,
            label=label,
        )


@dataclass(frozen=True)
class CheckResult:
    """Outcome of checking one proof.

    ``step`` is the 0-based index of the first rejected step within
    ``section`` (``"theorem"`` or ``"main"``). ``trusted_steps`` and
    ``trusted_theorem_steps`` list the steps of each section justified by
    derived rules.
    """

    accepted: bool
    reason: str = ""
    section: str | None = None
    step: int | None = None
    trusted_steps: tuple[int, ...] = ()
    trusted_theorem_steps: tuple[int, ...] = ()
    notes: tuple[str, ...] = ()
