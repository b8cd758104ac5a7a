"""
Generators of kernel-mode proofs.

Each tactic returns a ``Proof`` that ``check_proof`` accepts without extended
mode. Step wffs are stored in folded form so rendered proofs stay readable;
the kernel expands them before comparing.
"""

import logging

from app.core.exceptions import TacticError, TypeMismatchError
from app.models.proof import (
    R1,
    R2,
    Axiom,
    AxiomSchema,
    Hyp,
    Param,
    Proof,
    ProofStep,
    TheoremImport,
)
from app.models.types import OMICRON, Arrow
from app.models.wff import AbbrevName, Abs, App, Const, Var, Wff
from app.services.abbrev import expand, fold, make_abbrev
from app.services.kernel import apply_r1, instantiate_axiom
from app.services.substitution import find_occurrences, fresh_variable, vars_occurring
from app.services.syntax import infer_type, print_wff

logger = logging.getLogger(__name__)


def _step(wff: Wff, justification: Axiom | Hyp | TheoremImport | R1 | R2) -> ProofStep:
    return ProofStep(fold(expand(wff)), justification)


def _definedness_axiom(a: Wff) -> Axiom | None:
    """The A5/A6/A7/A8 justification of def(a), if one applies directly."""
    match a:
        case Var():
            return Axiom(AxiomSchema.A5, {"x": a})
        case Const():
            return Axiom(AxiomSchema.A6, {"c": a})
        case Abs(binder=binder, body=body):
            return Axiom(AxiomSchema.A7, {"x": binder, "B": body})
        case App(fun=fun, arg=arg):
            fun_type = infer_type(fun)
            if isinstance(fun_type, Arrow) and fun_type.codomain == OMICRON:
                return Axiom(AxiomSchema.A8, {"A": fun, "B": arg})
    return None


def tactic_odefined(a: Wff) -> Proof:
    """A one-step proof of def(a) for a wff of type o."""
    core = expand(a)
    if infer_type(core) != OMICRON:
        raise TypeMismatchError(
            f"{print_wff(a)} has type {infer_type(core)}, expected o",
            details={"wff": print_wff(a)},
        )
    justification = _definedness_axiom(core)
    # A core wff of type o is a variable, a constant or an application
    assert justification is not None
    step = ProofStep(make_abbrev(AbbrevName.IS_DEFINED, fold(core)), justification)
    return Proof.of([step], label="odefined")


def _lemma1_steps(a: Wff, offset: int = 0) -> list[ProofStep]:
    alpha = infer_type(a)
    avoid = vars_occurring(a)
    # The second fresh variable: def([λx A] x) then picks the same witness as def(A)
    first = fresh_variable(alpha, avoid)
    x = fresh_variable(alpha, avoid | {first})
    redex = App(Abs(x, a), x)

    params: dict[str, Param] = {"x": x, "B": a, "A": x}
    a4 = instantiate_axiom(AxiomSchema.A4, params)
    beta = make_abbrev(AbbrevName.QUASI_EQUALS, redex, a)
    beta_core = expand(beta)

    steps = [
        _step(make_abbrev(AbbrevName.IS_DEFINED, x), Axiom(AxiomSchema.A5, {"x": x})),
        _step(a4, Axiom(AxiomSchema.A4, params)),
        _step(beta, R2(offset, offset + 1)),
    ]
    current = beta_core
    for _ in range(2):
        path = find_occurrences(current, redex)[0]
        current = apply_r1(beta_core, current, path)
        target = offset + len(steps) - 1
        steps.append(_step(current, R1(offset + 2, target, path)))
    return steps


def tactic_lemma1(a: Wff) -> Proof:
    """A kernel proof of a ≃ a, for any wff a (defined or not)."""
    core = expand(a)
    steps = _lemma1_steps(core)
    logger.debug("Lemma 1 proof generated", extra={"wff": print_wff(a), "steps": len(steps)})
    return Proof.of(steps, label="lemma1")


def tactic_lemma2(a: Wff, b: Wff) -> Proof:
    """A proof of a = b from the hypotheses def(a), def(b) and a ≃ b."""
    a, b = expand(a), expand(b)
    if infer_type(a) != infer_type(b):
        raise TypeMismatchError(
            f"{print_wff(a)} and {print_wff(b)} have different types",
            details={"left": print_wff(a), "right": print_wff(b)},
        )
    hypotheses = (
        make_abbrev(AbbrevName.IS_DEFINED, fold(a)),
        make_abbrev(AbbrevName.IS_DEFINED, fold(b)),
        make_abbrev(AbbrevName.QUASI_EQUALS, fold(a), fold(b)),
    )
    a11_params: dict[str, Param] = {"A": a, "B": b}
    a11 = instantiate_axiom(AxiomSchema.A11, a11_params)
    theorem = (_step(a11, Axiom(AxiomSchema.A11, a11_params)),)
    equals = make_abbrev(AbbrevName.EQUALS, fold(a), fold(b))
    bridge = make_abbrev(AbbrevName.QUASI_EQUALS, hypotheses[2], equals)

    steps = [
        ProofStep(hypotheses[0], Hyp(0)),
        ProofStep(hypotheses[1], Hyp(1)),
        ProofStep(hypotheses[2], Hyp(2)),
        _step(a11, TheoremImport(0)),
        ProofStep(make_abbrev(AbbrevName.IMPLIES, hypotheses[1], bridge), R2(0, 3)),
        ProofStep(bridge, R2(1, 4)),
        ProofStep(equals, R1(5, 2, ())),
    ]
    return Proof.of(steps, hypotheses=hypotheses, theorem_section=theorem, label="lemma2")


def tactic_self_equality(a: Wff) -> Proof:
    """A kernel proof of a = a when def(a) is an instance of A5, A6, A7 or A8."""
    core = expand(a)
    defined = _definedness_axiom(core)
    if defined is None:
        raise TacticError(
            "selfeq", f"def({print_wff(a)}) is not an instance of A5, A6, A7 or A8"
        )
    a11_params: dict[str, Param] = {"A": core, "B": core}
    folded = fold(core)
    is_defined = make_abbrev(AbbrevName.IS_DEFINED, folded)
    quasi = make_abbrev(AbbrevName.QUASI_EQUALS, folded, folded)
    equals = make_abbrev(AbbrevName.EQUALS, folded, folded)
    bridge = make_abbrev(AbbrevName.QUASI_EQUALS, quasi, equals)

    steps = [
        ProofStep(is_defined, defined),
        _step(instantiate_axiom(AxiomSchema.A11, a11_params), Axiom(AxiomSchema.A11, a11_params)),
        ProofStep(make_abbrev(AbbrevName.IMPLIES, is_defined, bridge), R2(0, 1)),
        ProofStep(bridge, R2(0, 2)),
    ]
    steps.extend(_lemma1_steps(core, offset=len(steps)))
    steps.append(ProofStep(equals, R1(3, len(steps) - 1, ())))
    return Proof.of(steps, label="selfeq")
