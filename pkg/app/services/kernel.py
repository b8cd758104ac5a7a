"""
Kernel service: axiom instances, the rules R1 and R2, and proof checking.

The kernel never matches a wff against a schema. A justification names the
schema (or rule) and its parameters; the kernel recomputes the wff the
justification yields and compares it with the claimed step for structural
identity. Claimed wffs may be written with abbreviations: they are expanded
before the comparison.

Derived rules are admitted only in extended mode and are reported as trusted
steps in the check result.
"""

import logging
from collections.abc import Mapping, Sequence
from functools import reduce

from app.core.context import proof_context
from app.core.exceptions import (
    AxiomSideConditionError,
    ExtendedModeRequiredError,
    Q0uError,
    RuleApplicationError,
)
from app.models.proof import (
    R1,
    R2,
    Axiom,
    AxiomSchema,
    CheckResult,
    Derived,
    DerivedRule,
    Hyp,
    OccurrencePath,
    Param,
    PathStep,
    Proof,
    ProofStep,
    TheoremImport,
)
from app.models.types import OMICRON, Arrow, TypeSymbol
from app.models.wff import AbbrevName, Abs, App, Const, Var, Wff
from app.services.abbrev import (
    FALSE,
    TRUE,
    expand,
    make_abbrev,
    match_equals,
    match_forall,
    match_implies,
    match_is_defined,
    match_quasi_equality,
)
from app.services.substitution import (
    binders_above,
    free_vars,
    is_free_for,
    replace_at,
    substitute,
    subtree_at,
)
from app.services.syntax import infer_type, print_wff
from app.services.tautology import skeleton, tautologous

logger = logging.getLogger(__name__)

_a = make_abbrev


def _implies(a: Wff, b: Wff) -> Wff:
    return _a(AbbrevName.IMPLIES, a, b)


def _defined(a: Wff) -> Wff:
    return _a(AbbrevName.IS_DEFINED, a)


def _undefined(a: Wff) -> Wff:
    return _a(AbbrevName.IS_UNDEFINED, a)


def _quasi(a: Wff, b: Wff) -> Wff:
    return _a(AbbrevName.QUASI_EQUALS, a, b)


def _equals(a: Wff, b: Wff) -> Wff:
    return _a(AbbrevName.EQUALS, a, b)


def render_path(path: OccurrencePath) -> str:
    return ".".join(step.value for step in path) or "root"


# --- Axioms ---

_AXIOM_PARAMS: dict[AxiomSchema, tuple[str, ...]] = {
    AxiomSchema.A1: (),
    AxiomSchema.A2: ("alpha",),
    AxiomSchema.A3: ("alpha", "beta"),
    AxiomSchema.A4: ("x", "B", "A"),
    AxiomSchema.A5: ("x",),
    AxiomSchema.A6: ("c",),
    AxiomSchema.A7: ("x", "B"),
    AxiomSchema.A8: ("A", "B"),
    AxiomSchema.A9: ("A", "B"),
    AxiomSchema.A10: ("A", "B"),
    AxiomSchema.A11: ("A", "B"),
    AxiomSchema.A12: ("x", "A"),
    AxiomSchema.A13: ("x", "A"),
}

# Axiom parameters that denote type symbols rather than wffs
TYPE_PARAMS = frozenset({"alpha", "beta"})


def axiom_parameters(schema: AxiomSchema) -> tuple[str, ...]:
    return _AXIOM_PARAMS[schema]


class _AxiomParams:
    """Typed access to the parameters of one axiom justification."""

    def __init__(self, schema: AxiomSchema, params: Mapping[str, Param]) -> None:
        expected = set(_AXIOM_PARAMS[schema])
        given = set(params)
        if given != expected:
            reason = f"expects parameters {sorted(expected) or 'none'}"
            if expected - given:
                reason += f"; missing {sorted(expected - given)}"
            if given - expected:
                reason += f"; unexpected {sorted(given - expected)}"
            raise AxiomSideConditionError(schema.value, reason)
        self._schema = schema
        self._params = params

    def fail(self, reason: str) -> AxiomSideConditionError:
        return AxiomSideConditionError(self._schema.value, reason)

    def type(self, name: str) -> TypeSymbol:
        value = self._params[name]
        if isinstance(value, Wff):
            raise self.fail(f"{name} must be a type symbol")
        return value

    def wff(self, name: str) -> Wff:
        value = self._params[name]
        if not isinstance(value, Wff):
            raise self.fail(f"{name} must be a wff")
        return expand(value)

    def var(self, name: str) -> Var:
        value = self._params[name]
        if not isinstance(value, Var):
            raise self.fail(f"{name} must be a variable")
        return value

    def const(self, name: str) -> Const:
        value = self._params[name]
        if not isinstance(value, Const):
            raise self.fail(f"{value} is not a primitive constant")
        return value

    def applicable(self, a: Wff, b: Wff, *, result_o: bool) -> None:
        fun_type = infer_type(a)
        if not isinstance(fun_type, Arrow) or fun_type.domain != infer_type(b):
            raise self.fail(f"{print_wff(a)} cannot be applied to {print_wff(b)}")
        if result_o and fun_type.codomain != OMICRON:
            raise self.fail(f"{print_wff(a)} must have type oβ")
        if not result_o and fun_type.codomain == OMICRON:
            raise self.fail(f"{print_wff(a)} must have type αβ with α ≠ o")

    def description_binder(self) -> tuple[Var, Wff]:
        x, a = self.var("x"), self.wff("A")
        if x.type == OMICRON:
            raise self.fail("the description variable must not have type o")
        if infer_type(a) != OMICRON:
            raise self.fail(f"{print_wff(a)} must have type o")
        return x, a


def instantiate_axiom(schema: AxiomSchema, params: Mapping[str, Param]) -> Wff:
    """The expanded instance of ``schema`` for the given parameters.

    Raises ``AxiomSideConditionError`` if a parameter is missing, has the
    wrong kind or violates the schema's side condition.
    """
    p = _AxiomParams(schema, params)
    match schema:
        case AxiomSchema.A1:
            g = Var("g", Arrow(OMICRON, OMICRON))
            x = Var("x", OMICRON)
            instance = _equals(
                _a(AbbrevName.AND, App(g, TRUE), App(g, FALSE)),
                _a(AbbrevName.FORALL, x, App(g, x)),
            )
        case AxiomSchema.A2:
            alpha = p.type("alpha")
            x, y, h = Var("x", alpha), Var("y", alpha), Var("h", Arrow(OMICRON, alpha))
            instance = _implies(_equals(x, y), _equals(App(h, x), App(h, y)))
        case AxiomSchema.A3:
            alpha, beta = p.type("alpha"), p.type("beta")
            f, g = Var("f", Arrow(alpha, beta)), Var("g", Arrow(alpha, beta))
            x = Var("x", beta)
            instance = _equals(
                _equals(f, g), _a(AbbrevName.FORALL, x, _quasi(App(f, x), App(g, x)))
            )
        case AxiomSchema.A4:
            x, b, a = p.var("x"), p.wff("B"), p.wff("A")
            if infer_type(a) != x.type:
                raise p.fail(f"{print_wff(a)} does not have the type of {x}")
            if not is_free_for(a, x, b):
                raise p.fail(f"{print_wff(a)} is not free for {x} in {print_wff(b)}")
            instance = _implies(_defined(a), _quasi(App(Abs(x, b), a), substitute(a, x, b)))
        case AxiomSchema.A5:
            instance = _defined(p.var("x"))
        case AxiomSchema.A6:
            instance = _defined(p.const("c"))
        case AxiomSchema.A7:
            instance = _defined(Abs(p.var("x"), p.wff("B")))
        case AxiomSchema.A8:
            a, b = p.wff("A"), p.wff("B")
            p.applicable(a, b, result_o=True)
            instance = _defined(App(a, b))
        case AxiomSchema.A9:
            a, b = p.wff("A"), p.wff("B")
            p.applicable(a, b, result_o=True)
            instance = _implies(
                _a(AbbrevName.OR, _undefined(a), _undefined(b)), _a(AbbrevName.NOT, App(a, b))
            )
        case AxiomSchema.A10:
            a, b = p.wff("A"), p.wff("B")
            p.applicable(a, b, result_o=False)
            instance = _implies(
                _a(AbbrevName.OR, _undefined(a), _undefined(b)), _undefined(App(a, b))
            )
        case AxiomSchema.A11:
            a, b = p.wff("A"), p.wff("B")
            if infer_type(a) != infer_type(b):
                raise p.fail("A and B must have the same type")
            instance = _implies(
                _defined(a), _implies(_defined(b), _quasi(_quasi(a, b), _equals(a, b)))
            )
        case AxiomSchema.A12:
            x, a = p.description_binder()
            description = expand(_a(AbbrevName.DEFINITE_DESCRIPTION, x, a))
            if not is_free_for(description, x, a):
                raise p.fail(f"{print_wff(description)} is not free for {x} in {print_wff(a)}")
            instance = _implies(
                _a(AbbrevName.EXISTS_UNIQUE, x, a),
                _a(AbbrevName.AND, _defined(description), substitute(description, x, a)),
            )
        case AxiomSchema.A13:
            x, a = p.description_binder()
            instance = _implies(
                _a(AbbrevName.NOT, _a(AbbrevName.EXISTS_UNIQUE, x, a)),
                _undefined(_a(AbbrevName.DEFINITE_DESCRIPTION, x, a)),
            )
    return expand(instance)


# --- Rules ---


def apply_r1(
    eq_premise: Wff,
    target: Wff,
    path: OccurrencePath,
    hypotheses: Sequence[Wff] = (),
    hypothesis_mode: bool = False,
) -> Wff:
    """From A ≃ B and C, replace the occurrence of A at ``path`` in C by B.

    In hypothesis mode the occurrence must not lie in the scope of a binder
    that is free both in some hypothesis and in A ≃ B.
    """
    operands = match_quasi_equality(eq_premise)
    if operands is None:
        raise RuleApplicationError("R1", "the first premise is not a quasi-equality")
    a, b = operands
    occurrence = subtree_at(target, path)
    if occurrence != a:
        raise RuleApplicationError(
            "R1",
            f"the subwff at {render_path(path)} is {print_wff(occurrence)}, not {print_wff(a)}",
        )
    if hypothesis_mode:
        hypothesis_vars = frozenset().union(*(free_vars(h) for h in hypotheses))
        premise_vars = free_vars(eq_premise)
        for binder in binders_above(target, path):
            if binder in hypothesis_vars and binder in premise_vars:
                raise RuleApplicationError(
                    "R1",
                    f"the occurrence lies in the scope of a binder on {binder}, "
                    "which is free in a hypothesis and in the quasi-equality",
                    details={"binder": str(binder), "path": render_path(path)},
                )
    return replace_at(target, path, b)


def apply_r2(minor: Wff, major: Wff) -> Wff:
    """Modus ponens: from A and A ⊃ B infer B."""
    operands = match_implies(major)
    if operands is None:
        raise RuleApplicationError("R2", "the major premise is not an implication")
    antecedent, consequent = operands
    if antecedent != minor:
        raise RuleApplicationError(
            "R2",
            f"the antecedent {print_wff(antecedent)} is not the minor premise {print_wff(minor)}",
        )
    return consequent


# --- Derived rules ---


class _DerivedParams:
    def __init__(self, rule: DerivedRule, params: Mapping[str, object]) -> None:
        self._rule = rule
        self._params = params

    def _fail(self, name: str) -> RuleApplicationError:
        return RuleApplicationError(self._rule.value, f"parameter {name} is missing or malformed")

    def path(self) -> OccurrencePath:
        value = self._params.get("path")
        if not isinstance(value, tuple) or not all(isinstance(s, PathStep) for s in value):
            raise self._fail("path")
        return value

    def wff(self, name: str) -> Wff:
        value = self._params.get(name)
        if not isinstance(value, Wff):
            raise self._fail(name)
        return expand(value)

    def var(self, name: str) -> Var:
        value = self._params.get(name)
        if not isinstance(value, Var):
            raise self._fail(name)
        return value

    def proof(self) -> Proof:
        value = self._params.get("proof")
        if not isinstance(value, Proof):
            raise self._fail("proof")
        return value


def _expect_premises(rule: DerivedRule, premises: Sequence[Wff], count: int) -> None:
    if len(premises) != count:
        raise RuleApplicationError(rule.value, f"expects {count} premise(s), got {len(premises)}")


def _defined_operand(rule: DerivedRule, premise: Wff) -> Wff:
    operand = match_is_defined(premise)
    if operand is None:
        raise RuleApplicationError(rule.value, f"{print_wff(premise)} is not of the form def(A)")
    return operand


def tautology_claim(premises: Sequence[Wff], conclusion: Wff) -> Wff:
    """[A1 ∧ ... ∧ An] ⊃ B with the conjunction nested to the left, or B alone."""
    if not premises:
        return conclusion
    conjunction = reduce(lambda acc, p: _a(AbbrevName.AND, acc, p), premises)
    return _implies(conjunction, conclusion)


def derived_step(
    rule: DerivedRule,
    premises: Sequence[Wff],
    params: Mapping[str, object],
    hypotheses: Sequence[Wff] = (),
) -> Wff:
    """The conclusion a derived rule yields from already checked premises."""
    premises = [expand(p) for p in premises]
    p = _DerivedParams(rule, params)
    match rule:
        case DerivedRule.R1_PRIME:
            _expect_premises(rule, premises, 2)
            return apply_r1(premises[0], premises[1], p.path(), hypotheses, hypothesis_mode=True)
        case DerivedRule.R2_PRIME:
            _expect_premises(rule, premises, 2)
            return apply_r2(premises[0], premises[1])
        case DerivedRule.BETA:
            _expect_premises(rule, premises, 2)
            a = _defined_operand(rule, premises[0])
            target, path = premises[1], p.path()
            redex = subtree_at(target, path)
            if not (isinstance(redex, App) and isinstance(redex.fun, Abs) and redex.arg == a):
                raise RuleApplicationError(
                    rule.value, f"the subwff at {render_path(path)} is not [λx B] {print_wff(a)}"
                )
            x, b = redex.fun.binder, redex.fun.body
            if not is_free_for(a, x, b):
                raise RuleApplicationError(rule.value, f"{print_wff(a)} is not free for {x}")
            hypothesis_vars = frozenset().union(*(free_vars(h) for h in hypotheses))
            for binder in binders_above(target, path):
                if binder in hypothesis_vars and binder in free_vars(redex):
                    raise RuleApplicationError(
                        rule.value,
                        f"the redex lies in the scope of a binder on {binder}, "
                        "which is free in a hypothesis",
                    )
            return replace_at(target, path, substitute(a, x, b))
        case DerivedRule.UNIV_INST:
            _expect_premises(rule, premises, 2)
            a = _defined_operand(rule, premises[0])
            quantified = match_forall(premises[1])
            if quantified is None:
                raise RuleApplicationError(rule.value, "the second premise is not universally quantified")
            x, b = quantified
            if infer_type(a) != x.type or not is_free_for(a, x, b):
                raise RuleApplicationError(rule.value, f"{print_wff(a)} is not free for {x}")
            return substitute(a, x, b)
        case DerivedRule.UNIV_GEN:
            _expect_premises(rule, premises, 1)
            x = p.var("x")
            for h in hypotheses:
                if x in free_vars(h):
                    raise RuleApplicationError(rule.value, f"{x} is free in the hypothesis {print_wff(h)}")
            return expand(_a(AbbrevName.FORALL, x, premises[0]))
        case DerivedRule.TAUT:
            conclusion = p.wff("B")
            claim = tautology_claim(premises, conclusion)
            if not tautologous(claim):
                raise RuleApplicationError(rule.value, f"{print_wff(claim)} is not tautologous")
            return conclusion
        case DerivedRule.DEDUCTION:
            _expect_premises(rule, premises, 0)
            h0, subproof = p.wff("H"), p.proof()
            allowed = {expand(h) for h in hypotheses} | {h0}
            for h in subproof.hypotheses:
                if expand(h) not in allowed:
                    raise RuleApplicationError(
                        rule.value, f"the sub-proof assumes {print_wff(h)}, which is not available"
                    )
            result = check_proof(subproof, extended=True)
            if not result.accepted:
                raise RuleApplicationError(rule.value, f"the sub-proof is rejected: {result.reason}")
            return expand(_implies(h0, subproof.conclusion))
        case DerivedRule.LEMMA2:
            _expect_premises(rule, premises, 3)
            a = _defined_operand(rule, premises[0])
            b = _defined_operand(rule, premises[1])
            if match_equals(premises[2]) != (a, b):
                raise RuleApplicationError(
                    rule.value, f"the third premise is not {print_wff(a)} = {print_wff(b)}"
                )
            return expand(_quasi(a, b))
        case DerivedRule.SELF_EQ:
            _expect_premises(rule, premises, 1)
            a = _defined_operand(rule, premises[0])
            return expand(_equals(a, a))
    raise RuleApplicationError(str(rule), "unknown derived rule")


# --- Proof checking ---


class _Checker:
    def __init__(self, proof: Proof, extended: bool, binder_restriction: bool) -> None:
        self.proof = proof
        self.extended = extended
        self.binder_restriction = binder_restriction
        self.hypotheses = [expand(h) for h in proof.hypotheses]
        self.theorems: list[Wff] = []
        self.main: list[Wff] = []
        self.section = "theorem"
        self.index: int | None = None
        self.trusted: list[int] = []
        self.trusted_theorem: list[int] = []
        self.notes: list[str] = []

    def run(self) -> None:
        self.check_section(self.proof.theorem_section, self.theorems)
        self.section, self.index = "main", None
        if not self.proof.main_section:
            raise RuleApplicationError("proof", "the main section is empty")
        self.check_section(self.proof.main_section, self.main)
        self.index = None
        if expand(self.proof.conclusion) != self.main[-1]:
            raise RuleApplicationError("proof", "the conclusion is not the last step")

    def check_section(self, steps: Sequence[ProofStep], done: list[Wff]) -> None:
        for index, step in enumerate(steps):
            self.index = index
            claimed = expand(step.wff)
            if infer_type(claimed) != OMICRON:
                raise RuleApplicationError(f"step {index + 1}", "a proof step must have type o")
            computed = self._justify(index, step, done)
            if computed != claimed:
                raise RuleApplicationError(
                    f"step {index + 1}",
                    f"the justification yields {print_wff(computed)}, not the claimed wff",
                )
            logger.debug(
                "Step accepted",
                extra={
                    "section": self.section,
                    "step": index + 1,
                    "rule": type(step.justification).__name__,
                },
            )
            done.append(claimed)

    def _earlier(self, done: list[Wff], ref: int) -> Wff:
        if not 0 <= ref < len(done):
            raise RuleApplicationError(
                f"step {len(done) + 1}", f"step {ref + 1} does not precede this step"
            )
        return done[ref]

    def _justify(self, index: int, step: ProofStep, done: list[Wff]) -> Wff:
        in_main = self.section == "main"
        match step.justification:
            case Axiom(schema=schema, params=params):
                return instantiate_axiom(schema, params)
            case Hyp(index=ref) if in_main:
                if not 0 <= ref < len(self.hypotheses):
                    raise RuleApplicationError(f"step {index + 1}", f"there is no hypothesis {ref + 1}")
                return self.hypotheses[ref]
            case TheoremImport(index=ref) if in_main:
                if not 0 <= ref < len(self.theorems):
                    raise RuleApplicationError(f"step {index + 1}", f"there is no theorem step {ref + 1}")
                return self.theorems[ref]
            case R1(eq_step=eq_step, target_step=target_step, path=path):
                hypothesis_mode = in_main and self.binder_restriction and bool(self.hypotheses)
                return apply_r1(
                    self._earlier(done, eq_step),
                    self._earlier(done, target_step),
                    path,
                    self.hypotheses,
                    hypothesis_mode,
                )
            case R2(minor=minor, major=major):
                return apply_r2(self._earlier(done, minor), self._earlier(done, major))
            case Derived(rule=rule, premises=refs, params=params):
                if not self.extended:
                    raise ExtendedModeRequiredError(rule.value)
                premises = [self._earlier(done, ref) for ref in refs]
                hypotheses = self.hypotheses if in_main else []
                result = derived_step(rule, premises, params, hypotheses)
                (self.trusted if in_main else self.trusted_theorem).append(index)
                if rule == DerivedRule.TAUT and skeleton(tautology_claim(premises, result)).uses_equivalence:
                    self.notes.append(
                        f"{self.section} step {index + 1}: = at type o read as material equivalence"
                    )
                logger.warning(
                    "Trusted step",
                    extra={"rule": rule.value, "section": self.section, "step": index + 1},
                )
                return result
        raise RuleApplicationError(
            f"step {index + 1}",
            f"{type(step.justification).__name__} is not allowed in the {self.section} section",
        )


def check_proof(
    proof: Proof, *, extended: bool = False, binder_restriction: bool = True
) -> CheckResult:
    """Check every step of ``proof``; a rejection is a result, not an exception.

    ``binder_restriction=False`` drops the variable condition on R1 in the
    main section. Only the soundness battery uses it, to show that the
    condition is needed.
    """
    checker = _Checker(proof, extended, binder_restriction)
    with proof_context(proof.label or "-"):
        try:
            checker.run()
        except Q0uError as exc:
            step = checker.index
            logger.warning(
                "Proof rejected",
                extra={
                    "section": checker.section,
                    "step": None if step is None else step + 1,
                    "reason": exc.message,
                },
            )
            return CheckResult(
                accepted=False,
                reason=exc.message,
                section=checker.section,
                step=step,
                trusted_steps=tuple(checker.trusted),
                trusted_theorem_steps=tuple(checker.trusted_theorem),
                notes=tuple(checker.notes),
            )
        logger.info(
            "Proof accepted",
            extra={
                "steps": len(proof.main_section),
                "trusted_steps": len(checker.trusted) + len(checker.trusted_theorem),
            },
        )
        return CheckResult(
            accepted=True,
            trusted_steps=tuple(checker.trusted),
            trusted_theorem_steps=tuple(checker.trusted_theorem),
            notes=tuple(checker.notes),
        )
