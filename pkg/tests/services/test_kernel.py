"""
Unit tests for the proof kernel: axiom instances, R1/R2 and check_proof.
Proofs are built directly from ProofStep values.
"""

import pytest

from app.core.exceptions import AxiomSideConditionError, RuleApplicationError
from app.models.proof import (
    R1,
    R2,
    Axiom,
    AxiomSchema,
    Derived,
    DerivedRule,
    Hyp,
    PathStep,
    Proof,
    ProofStep,
    TheoremImport,
)
from app.models.types import IOTA, OMICRON
from app.models.wff import Abs, App, Var
from app.services.abbrev import expand
from app.services.catalog import w
from app.services.kernel import (
    apply_r1,
    apply_r2,
    axiom_parameters,
    check_proof,
    instantiate_axiom,
    render_path,
)
from app.services.substitution import find_occurrences

x_i = Var("x", IOTA)
c, d, p, k = w("c"), w("d"), w("p"), w("k")


def step(text: str, justification) -> ProofStep:
    return ProofStep(w(text), justification)


def a6(text: str = "c") -> ProofStep:
    return step(f"def({text})", Axiom(AxiomSchema.A6, {"c": w(text)}))


class TestInstantiateAxiom:
    def test_a5(self):
        assert instantiate_axiom(AxiomSchema.A5, {"x": x_i}) == expand(w("def(x_i)"))

    def test_a4(self):
        params = {"x": x_i, "B": w("p x_i"), "A": c}
        assert instantiate_axiom(AxiomSchema.A4, params) == expand(
            w("def(c) => [\\x_i. p x_i] c ~= p c")
        )

    def test_a2_takes_a_type(self):
        assert instantiate_axiom(AxiomSchema.A2, {"alpha": IOTA}) == expand(
            w("x_i = y_i => h_(oi) x_i = h_(oi) y_i")
        )

    def test_a4_capture_is_rejected(self):
        params = {"x": x_i, "B": w("\\y_i. r x_i y_i"), "A": w("y_i")}
        with pytest.raises(AxiomSideConditionError, match="not free for"):
            instantiate_axiom(AxiomSchema.A4, params)

    def test_a6_needs_a_constant(self):
        with pytest.raises(AxiomSideConditionError):
            instantiate_axiom(AxiomSchema.A6, {"c": x_i})

    def test_a8_needs_type_o_result(self):
        with pytest.raises(AxiomSideConditionError, match="type oβ"):
            instantiate_axiom(AxiomSchema.A8, {"A": k, "B": c})

    def test_a10_rejects_type_o_result(self):
        with pytest.raises(AxiomSideConditionError):
            instantiate_axiom(AxiomSchema.A10, {"A": p, "B": c})

    def test_a11_needs_equal_types(self):
        with pytest.raises(AxiomSideConditionError):
            instantiate_axiom(AxiomSchema.A11, {"A": c, "B": p})

    def test_a12_rejects_type_o_binder(self):
        x_o = Var("x", OMICRON)
        with pytest.raises(AxiomSideConditionError):
            instantiate_axiom(AxiomSchema.A12, {"x": x_o, "A": x_o})

    def test_missing_parameter(self):
        with pytest.raises(AxiomSideConditionError, match="missing"):
            instantiate_axiom(AxiomSchema.A4, {"x": x_i, "B": c})

    def test_unexpected_parameter(self):
        with pytest.raises(AxiomSideConditionError, match="unexpected"):
            instantiate_axiom(AxiomSchema.A1, {"x": x_i})

    def test_parameter_names(self):
        assert axiom_parameters(AxiomSchema.A1) == ()
        assert axiom_parameters(AxiomSchema.A4) == ("x", "B", "A")


class TestRules:
    def test_r1_replaces_one_occurrence(self):
        eq = expand(w("c ~= d"))
        target = expand(w("r c c"))
        assert apply_r1(eq, target, (PathStep.ARG,)) == expand(w("r c d"))

    def test_r1_needs_a_quasi_equality(self):
        with pytest.raises(RuleApplicationError, match="quasi-equality"):
            apply_r1(expand(w("c = d")), expand(w("p c")), (PathStep.ARG,))

    def test_r1_occurrence_must_match(self):
        with pytest.raises(RuleApplicationError, match="not c"):
            apply_r1(expand(w("c ~= d")), expand(w("p d")), (PathStep.ARG,))

    def test_r1_binder_restriction(self):
        eq = expand(w("x_i ~= c"))
        target = Abs(x_i, App(p, x_i))
        path = (PathStep.BODY, PathStep.ARG)
        assert apply_r1(eq, target, path) == Abs(x_i, App(p, c))
        with pytest.raises(RuleApplicationError, match="binder"):
            apply_r1(eq, target, path, [eq], hypothesis_mode=True)

    def test_r2(self):
        assert apply_r2(expand(w("p c")), expand(w("p c => p d"))) == expand(w("p d"))

    def test_r2_antecedent_must_match(self):
        with pytest.raises(RuleApplicationError, match="antecedent"):
            apply_r2(expand(w("p d")), expand(w("p c => p d")))

    def test_r2_needs_an_implication(self):
        with pytest.raises(RuleApplicationError, match="implication"):
            apply_r2(expand(w("p c")), expand(w("p c")))

    def test_render_path(self):
        assert render_path(()) == "root"
        assert render_path((PathStep.FUN, PathStep.ARG)) == "fun.arg"


class TestCheckProof:
    def test_one_step_a5_proof(self):
        proof = Proof.of([ProofStep(w("def(x_i)"), Axiom(AxiomSchema.A5, {"x": x_i}))])
        result = check_proof(proof)
        assert result.accepted
        assert result.trusted_steps == ()

    def test_proof_needs_a_main_step(self):
        with pytest.raises(RuleApplicationError, match="the main section is empty"):
            Proof.of([])

    def test_modus_ponens_chain(self):
        a4 = Axiom(AxiomSchema.A4, {"x": x_i, "B": w("p x_i"), "A": c})
        proof = Proof.of(
            [
                a6(),
                step("def(c) => [\\x_i. p x_i] c ~= p c", a4),
                step("[\\x_i. p x_i] c ~= p c", R2(0, 1)),
            ]
        )
        assert check_proof(proof).accepted

    def test_wrong_claim_is_rejected_at_that_step(self):
        proof = Proof.of(
            [a6(), ProofStep(w("def(y_i)"), Axiom(AxiomSchema.A5, {"x": x_i}))]
        )
        result = check_proof(proof)
        assert not result.accepted
        assert result.section == "main"
        assert result.step == 1
        assert "not the claimed wff" in result.reason

    def test_side_condition_failure_is_a_rejection(self):
        proof = Proof.of([ProofStep(w("def(x_i)"), Axiom(AxiomSchema.A6, {"c": x_i}))])
        result = check_proof(proof)
        assert not result.accepted
        assert result.step == 0
        assert "A6" in result.reason

    def test_forward_reference(self):
        proof = Proof.of([step("p c", R2(0, 1))])
        result = check_proof(proof)
        assert not result.accepted
        assert "does not precede" in result.reason

    def test_steps_must_have_type_o(self):
        proof = Proof.of([ProofStep(c, Axiom(AxiomSchema.A6, {"c": c}))])
        assert "type o" in check_proof(proof).reason

    def test_conclusion_must_be_last_step(self):
        proof = Proof(main_section=(a6(),), conclusion=w("def(d)"))
        result = check_proof(proof)
        assert not result.accepted
        assert result.step is None
        assert "conclusion" in result.reason

    def test_empty_proof(self):
        proof = Proof(main_section=(), conclusion=w("T"))
        assert not check_proof(proof).accepted

    def test_hypotheses(self):
        proof = Proof.of([step("p c", Hyp(0))], hypotheses=(w("p c"),))
        assert check_proof(proof).accepted

    def test_missing_hypothesis(self):
        proof = Proof.of([step("p c", Hyp(1))], hypotheses=(w("p c"),))
        result = check_proof(proof)
        assert "no hypothesis 2" in result.reason

    def test_theorem_import(self):
        proof = Proof.of([step("def(c)", TheoremImport(0))], theorem_section=(a6(),))
        assert check_proof(proof).accepted

    def test_theorem_section_cannot_use_hypotheses(self):
        proof = Proof.of(
            [step("p c", Hyp(0))],
            hypotheses=(w("p c"),),
            theorem_section=(step("p c", Hyp(0)),),
        )
        result = check_proof(proof)
        assert not result.accepted
        assert result.section == "theorem"

    def test_r1_respects_hypothesis_binders(self):
        hypothesis = w("x_i ~= c")
        target = expand(w("def(\\x_i. p x_i)"))
        path = find_occurrences(target, x_i)[0]
        steps = [
            ProofStep(hypothesis, Hyp(0)),
            ProofStep(target, Axiom(AxiomSchema.A7, {"x": x_i, "B": w("p x_i")})),
            ProofStep(apply_r1(expand(hypothesis), target, path), R1(0, 1, path)),
        ]
        proof = Proof.of(steps, hypotheses=(hypothesis,))
        result = check_proof(proof)
        assert not result.accepted
        assert result.step == 2
        assert check_proof(proof, binder_restriction=False).accepted


class TestDerivedRules:
    def test_kernel_mode_refuses_derived_steps(self):
        proof = Proof.of([step("x_o => x_o", Derived(DerivedRule.TAUT, (), {"B": w("x_o => x_o")}))])
        result = check_proof(proof)
        assert not result.accepted
        assert "extended-mode rule in kernel mode" in result.reason

    def test_taut_in_extended_mode(self):
        proof = Proof.of([step("x_o => x_o", Derived(DerivedRule.TAUT, (), {"B": w("x_o => x_o")}))])
        result = check_proof(proof, extended=True)
        assert result.accepted
        assert result.trusted_steps == (0,)
        assert result.notes == ()

    def test_taut_notes_material_equivalence(self):
        proof = Proof.of([step("x_o = x_o", Derived(DerivedRule.TAUT, (), {"B": w("x_o = x_o")}))])
        result = check_proof(proof, extended=True)
        assert result.accepted
        assert len(result.notes) == 1

    def test_taut_with_premises(self):
        proof = Proof.of(
            [
                step("p c", Hyp(0)),
                step("p c => p d", Hyp(1)),
                step("p d", Derived(DerivedRule.TAUT, (0, 1), {"B": w("p d")})),
            ],
            hypotheses=(w("p c"), w("p c => p d")),
        )
        assert check_proof(proof, extended=True).accepted

    def test_non_tautology(self):
        proof = Proof.of([step("x_o => y_o", Derived(DerivedRule.TAUT, (), {"B": w("x_o => y_o")}))])
        result = check_proof(proof, extended=True)
        assert "not tautologous" in result.reason

    def test_self_equality(self):
        proof = Proof.of([a6(), step("c = c", Derived(DerivedRule.SELF_EQ, (0,)))])
        assert check_proof(proof, extended=True).accepted

    def test_lemma2_converse(self):
        hypotheses = (w("def(c)"), w("def(d)"), w("c = d"))
        proof = Proof.of(
            [
                step("def(c)", Hyp(0)),
                step("def(d)", Hyp(1)),
                step("c = d", Hyp(2)),
                step("c ~= d", Derived(DerivedRule.LEMMA2, (0, 1, 2))),
            ],
            hypotheses=hypotheses,
        )
        assert check_proof(proof, extended=True).accepted

    def test_universal_generalization_and_instantiation(self):
        proof = Proof.of(
            [
                step("p x_i => p x_i", Derived(DerivedRule.TAUT, (), {"B": w("p x_i => p x_i")})),
                step("forall x_i. p x_i => p x_i", Derived(DerivedRule.UNIV_GEN, (0,), {"x": x_i})),
                a6(),
                step("p c => p c", Derived(DerivedRule.UNIV_INST, (2, 1))),
            ]
        )
        assert check_proof(proof, extended=True).accepted

    def test_generalization_over_a_hypothesis_variable(self):
        proof = Proof.of(
            [
                step("p x_i", Hyp(0)),
                step("forall x_i. p x_i", Derived(DerivedRule.UNIV_GEN, (0,), {"x": x_i})),
            ],
            hypotheses=(w("p x_i"),),
        )
        result = check_proof(proof, extended=True)
        assert "free in the hypothesis" in result.reason

    def test_beta(self):
        proof = Proof.of(
            [
                a6(),
                step("[\\x_i. p x_i] c", Hyp(0)),
                step("p c", Derived(DerivedRule.BETA, (0, 1), {"path": ()})),
            ],
            hypotheses=(w("[\\x_i. p x_i] c"),),
        )
        assert check_proof(proof, extended=True).accepted

    def test_r1_prime(self):
        proof = Proof.of(
            [
                step("c ~= d", Hyp(0)),
                step("p c", Hyp(1)),
                step("p d", Derived(DerivedRule.R1_PRIME, (0, 1), {"path": (PathStep.ARG,)})),
            ],
            hypotheses=(w("c ~= d"), w("p c")),
        )
        assert check_proof(proof, extended=True).accepted

    def test_deduction(self):
        sub = Proof.of([step("p c", Hyp(0))], hypotheses=(w("p c"),), label="sub")
        proof = Proof.of(
            [step("p c => p c", Derived(DerivedRule.DEDUCTION, (), {"H": w("p c"), "proof": sub}))]
        )
        assert check_proof(proof, extended=True).accepted

    def test_deduction_sub_proof_may_not_assume_more(self):
        sub = Proof.of([step("p d", Hyp(0))], hypotheses=(w("p d"),), label="sub")
        proof = Proof.of(
            [step("p c => p d", Derived(DerivedRule.DEDUCTION, (), {"H": w("p c"), "proof": sub}))]
        )
        result = check_proof(proof, extended=True)
        assert "not available" in result.reason

    @pytest.mark.parametrize(
        ("hypothesis", "accepted"),
        [("p y_i", False), ("p d", True)],
    )
    def test_beta_under_a_binder_free_in_the_redex(self, hypothesis, accepted):
        # y_i is free in the abstraction [\x_i. r x_i y_i], not in the argument c
        quantified = "forall y_i. [\\x_i. r x_i y_i] c"
        proof = Proof.of(
            [
                a6(),
                step(quantified, Hyp(1)),
                step(
                    "forall y_i. r c y_i",
                    Derived(DerivedRule.BETA, (0, 1), {"path": (PathStep.ARG, PathStep.BODY)}),
                ),
            ],
            hypotheses=(w(hypothesis), w(quantified)),
        )
        result = check_proof(proof, extended=True)
        assert result.accepted is accepted
        if not accepted:
            assert "in the scope of a binder on y_i" in result.reason


class TestTheoremSectionDerivedSteps:
    def proof(self) -> Proof:
        taut = Derived(DerivedRule.TAUT, (), {"B": w("x_o => x_o")})
        return Proof(
            main_section=(step("x_o => x_o", TheoremImport(0)),),
            conclusion=w("x_o => x_o"),
            theorem_section=(step("x_o => x_o", taut),),
        )

    def test_reported_as_trusted(self):
        result = check_proof(self.proof(), extended=True)
        assert result.accepted
        assert result.trusted_steps == ()
        assert result.trusted_theorem_steps == (0,)

    def test_refused_in_kernel_mode(self):
        result = check_proof(self.proof())
        assert not result.accepted
        assert result.section == "theorem"
        assert "extended-mode rule in kernel mode" in result.reason
