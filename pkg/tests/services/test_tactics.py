import pytest

from app.core.exceptions import TacticError, TypeMismatchError
from app.models.proof import Hyp, TheoremImport
from app.services.abbrev import expand
from app.services.catalog import tactic_wffs, w
from app.services.kernel import check_proof
from app.services.semantics import entails, is_valid_in_model
from app.services.tactics import (
    tactic_lemma1,
    tactic_lemma2,
    tactic_odefined,
    tactic_self_equality,
)


class TestOdefined:
    @pytest.mark.parametrize("text", ["x_o", "p c", "T", "p (k c)"])
    def test_one_step_kernel_proof(self, text):
        proof = tactic_odefined(w(text))
        assert len(proof.main_section) == 1
        assert check_proof(proof).accepted
        assert expand(proof.conclusion) == expand(w(f"def({text})"))

    def test_rejects_non_formulas(self):
        with pytest.raises(TypeMismatchError):
            tactic_odefined(w("c"))


class TestLemma1:
    def test_proof_shape(self):
        proof = tactic_lemma1(w("c"))
        assert len(proof.main_section) == 5
        assert expand(proof.conclusion) == expand(w("c ~= c"))

    @pytest.mark.parametrize("text", ["c", "k c", "iota_i p", "\\x_i. k x_i", "x_o", "bot_i"])
    def test_accepted_in_kernel_mode(self, text):
        proof = tactic_lemma1(w(text))
        result = check_proof(proof)
        assert result.accepted, result.reason
        assert result.trusted_steps == ()

    def test_avoids_variables_of_the_operand(self):
        proof = tactic_lemma1(w("r x_i y_i"))
        assert check_proof(proof).accepted

    def test_conclusion_holds_in_the_catalog_model(self, model2):
        for a in tactic_wffs():
            assert is_valid_in_model(model2, expand(tactic_lemma1(a).conclusion))


class TestLemma2:
    def test_accepted(self):
        proof = tactic_lemma2(w("c"), w("d"))
        assert check_proof(proof).accepted
        assert expand(proof.conclusion) == expand(w("c = d"))

    def test_uses_hypotheses_and_a_theorem(self):
        proof = tactic_lemma2(w("c"), w("d"))
        assert len(proof.hypotheses) == 3
        assert len(proof.theorem_section) == 1
        kinds = {type(s.justification) for s in proof.main_section}
        assert {Hyp, TheoremImport} <= kinds

    def test_sound_under_its_hypotheses(self, model2):
        proof = tactic_lemma2(w("c"), w("d"))
        hypotheses = [expand(h) for h in proof.hypotheses]
        assert entails(model2, hypotheses, expand(proof.conclusion))

    def test_rejects_mixed_types(self):
        with pytest.raises(TypeMismatchError):
            tactic_lemma2(w("c"), w("p"))


class TestSelfEquality:
    @pytest.mark.parametrize("text", ["c", "x_i", "p c", "[\\x_i. p x_i]"])
    def test_accepted(self, text):
        proof = tactic_self_equality(w(text))
        assert check_proof(proof).accepted
        assert expand(proof.conclusion) == expand(w(f"{text} = {text}"))

    def test_needs_a_direct_definedness_axiom(self):
        with pytest.raises(TacticError, match="not an instance"):
            tactic_self_equality(w("k c"))
