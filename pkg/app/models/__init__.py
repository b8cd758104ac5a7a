from app.models.proof import (
    AxiomSchema,
    CheckResult,
    DerivedRule,
    PathStep,
    Proof,
    ProofStep,
)
from app.models.signature import Signature
from app.models.types import IOTA, OMICRON, Arrow, Iota, Omicron, TypeSymbol
from app.models.wff import Abbrev, AbbrevName, Abs, App, Const, ConstKind, Var, Wff

__all__ = [
    "Abbrev",
    "AbbrevName",
    "Abs",
    "App",
    "Arrow",
    "AxiomSchema",
    "CheckResult",
    "Const",
    "ConstKind",
    "DerivedRule",
    "IOTA",
    "Iota",
    "OMICRON",
    "Omicron",
    "PathStep",
    "Proof",
    "ProofStep",
    "Signature",
    "TypeSymbol",
    "Var",
    "Wff",
]
