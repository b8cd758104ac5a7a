"""
Tests for the self-check battery, including the two mutations that must
make it fail.
"""

import pytest

from app.models.proof import R2, Hyp, Proof, ProofStep
from app.schemas.soundness import SoundnessReport
from app.services.catalog import (
    Catalog,
    HypothesisCase,
    axiom_cases,
    default_catalog,
    hypothesis_cases,
    propositional_formulas,
    rule_cases,
    tactic_wffs,
    w,
)
from app.services.soundness import check_soundness_suite

BASE_SECTIONS = ["axioms", "rules", "hypotheses", "tactics", "totality", "tautology", "roundtrip"]


def section(result, name):
    return next(s for s in result.sections if s.name == name)


class TestSuiteStructure:
    def test_empty_catalog_passes(self, frame1):
        result = check_soundness_suite(Catalog(), [frame1])
        assert result.passed
        assert [s.name for s in result.sections] == BASE_SECTIONS
        assert all(s.checked == 0 for s in result.sections)

    def test_semantic_laws_add_sections(self, frame1):
        result = check_soundness_suite(Catalog(semantic_laws=True), [frame1])
        names = [s.name for s in result.sections]
        assert "undefinedness" in names
        assert "consistency" in names
        assert result.passed


class TestSections:
    def test_axiom_instances_are_valid(self, frame1):
        result = check_soundness_suite(Catalog(axioms=axiom_cases()), [frame1])
        axioms = section(result, "axioms")
        assert axioms.checked == len(axiom_cases())
        assert axioms.passed, axioms.failures

    def test_rules_preserve_validity(self, frame1):
        result = check_soundness_suite(Catalog(rules=rule_cases()), [frame1])
        assert section(result, "rules").passed

    def test_hypothesis_proofs(self, frame1, frame2):
        result = check_soundness_suite(Catalog(hypothesis_proofs=hypothesis_cases()), [frame1, frame2])
        hypotheses = section(result, "hypotheses")
        assert hypotheses.checked == len(hypothesis_cases())
        assert hypotheses.passed, hypotheses.failures

    def test_tactics(self, frame1, frame2):
        result = check_soundness_suite(Catalog(tactic_inputs=tactic_wffs()), [frame1, frame2])
        assert section(result, "tactics").passed

    def test_tautology_oracle_agrees(self, frame1):
        catalog = Catalog(propositional=tuple(propositional_formulas(200)))
        tautology = section(check_soundness_suite(catalog, [frame1]), "tautology")
        assert tautology.checked == 200
        assert tautology.passed

    def test_accepted_proof_expected_to_be_rejected_fails(self, frame1):
        proof = Proof.of(
            [
                ProofStep(w("p c"), Hyp(0)),
                ProofStep(w("p c => p d"), Hyp(1)),
                ProofStep(w("p d"), R2(0, 1)),
            ],
            hypotheses=(w("p c"), w("p c => p d")),
        )
        catalog = Catalog(hypothesis_proofs=(HypothesisCase("mp", proof, accepted=False),))
        hypotheses = section(check_soundness_suite(catalog, [frame1]), "hypotheses")
        assert [f.label for f in hypotheses.failures] == ["mp"]
        assert hypotheses.failures[0].detail.startswith("accepted, but must be rejected")


class TestMutations:
    def test_a9_mutation_is_caught(self, frame1):
        result = check_soundness_suite(Catalog(axioms=axiom_cases()), [frame1], mutate="A9")
        assert not result.passed
        assert result.mutation == "A9"
        failed = {f.label for f in section(result, "axioms").failures}
        assert failed
        assert all(label.startswith("A9.") for label in failed)

    def test_r1_mutation_is_caught(self, frame1, frame2):
        catalog = Catalog(hypothesis_proofs=hypothesis_cases())
        result = check_soundness_suite(catalog, [frame1, frame2], mutate="R1")
        assert not result.passed
        failed = {f.label for f in section(result, "hypotheses").failures}
        assert "hyp-r1-captured" in failed


class TestSoundnessReport:
    def test_from_result_truncates_failures(self, frame1):
        result = check_soundness_suite(Catalog(axioms=axiom_cases()), [frame1], mutate="A9")
        report = SoundnessReport.from_result(result, [1], max_failures=1)
        axioms = next(s for s in report.sections if s.name == "axioms")
        assert not report.passed
        assert report.iota_bases == [1]
        assert axioms.failed >= 1
        assert len(axioms.failures) == 1


@pytest.mark.slow
def test_default_catalog_passes(frame1, frame2):
    catalog = default_catalog(generated=50, propositional=200)
    result = check_soundness_suite(catalog, [frame1, frame2])
    assert result.passed, [s.failures for s in result.sections if not s.passed]
