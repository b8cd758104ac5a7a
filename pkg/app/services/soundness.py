"""
Soundness service: the self-check battery.

Runs a ``Catalog`` against the standard models over the given frames and
collects one ``SectionResult`` per property: axiom validity, rule
preservation, proofs from hypotheses, tactics, type-o totality,
undefinedness, tautology agreement, printer/parser round trip and
consistency. Failures are collected, never raised.

Two mutations exist to show the battery is not vacuous: ``"A9"`` drops the
negation from the consequent of every A9 instance, and ``"R1"`` checks the
hypothesis proofs with the R1 binder restriction disabled.
"""

import logging
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

from app.core.exceptions import Q0uError, TacticError
from app.models.proof import AxiomSchema, Proof
from app.models.types import IOTA, OMICRON, Arrow
from app.models.wff import Abbrev, AbbrevName, App, Var, Wff
from app.services.abbrev import FALSE, expand, make_abbrev
from app.services.catalog import CATALOG_SIGNATURE, AxiomCase, Catalog, catalog_model
from app.services.kernel import check_proof
from app.services.parser import parse_wff
from app.services.semantics import (
    Frame,
    Model,
    assignments,
    entails,
    enumerate_models,
    falsifying_assignment,
    is_valid_in_model,
    nonlogical_constants,
    render_value,
    valuate,
)
from app.services.substitution import free_vars
from app.services.syntax import infer_type, print_wff
from app.services.tactics import (
    tactic_lemma1,
    tactic_odefined,
    tactic_self_equality,
)
from app.services.tautology import tautologous

logger = logging.getLogger(__name__)

MUTATIONS = ("A9", "R1")


@dataclass(frozen=True)
class Failure:
    label: str
    detail: str


@dataclass
class SectionResult:
    name: str
    checked: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, label: str, ok: bool, detail: str = "") -> None:
        self.checked += 1
        if not ok:
            self.failures.append(Failure(label, detail))


@dataclass
class SuiteResult:
    sections: list[SectionResult] = field(default_factory=list)
    mutation: str | None = None

    @property
    def passed(self) -> bool:
        return all(section.passed for section in self.sections)


def _models(frames: Sequence[Frame], wffs: Iterable[Wff]) -> list[Model]:
    """Every interpretation, over every frame, of the constants in ``wffs``."""
    constants = frozenset().union(*(nonlogical_constants(w) for w in wffs))
    return [model for frame in frames for model in enumerate_models(frame, constants)]


def _counter_example(model: Model, wff: Wff) -> str:
    phi = falsifying_assignment(model, wff)
    if phi is None:
        return ""
    assignment = ", ".join(f"{v} := {render_value(d)}" for v, d in phi.items())
    return f"{model!r} [{assignment}]"


# --- Sections ---


def _mutated_a9(case: AxiomCase) -> Wff:
    a, b = case.params["A"], case.params["B"]
    assert isinstance(a, Wff) and isinstance(b, Wff)
    undefined = AbbrevName.IS_UNDEFINED
    return expand(
        make_abbrev(
            AbbrevName.IMPLIES,
            make_abbrev(AbbrevName.OR, make_abbrev(undefined, a), make_abbrev(undefined, b)),
            App(expand(a), expand(b)),
        )
    )


def _axioms(catalog: Catalog, frames: Sequence[Frame], mutate: str | None) -> SectionResult:
    section = SectionResult("axioms")
    for case in catalog.axioms:
        instance = case.instance
        if mutate == "A9" and case.schema == AxiomSchema.A9:
            instance = _mutated_a9(case)
        counter = ""
        for model in _models(frames, [instance]):
            if not is_valid_in_model(model, instance):
                counter = _counter_example(model, instance)
                break
        section.record(case.label, not counter, f"{print_wff(instance)} fails in {counter}")
    return section


def _rules(catalog: Catalog, frames: Sequence[Frame]) -> SectionResult:
    section = SectionResult("rules")
    for case in catalog.rules:
        try:
            conclusion = case.conclusion
        except Q0uError as exc:
            section.record(case.label, False, exc.message)
            continue
        counter = ""
        for model in _models(frames, [*case.premises, conclusion]):
            if all(is_valid_in_model(model, p) for p in case.premises) and not is_valid_in_model(
                model, conclusion
            ):
                counter = _counter_example(model, conclusion)
                break
        section.record(case.label, not counter, f"premises valid but conclusion fails in {counter}")
    return section


def _hypotheses(catalog: Catalog, frames: Sequence[Frame], mutate: str | None) -> SectionResult:
    section = SectionResult("hypotheses")
    for case in catalog.hypothesis_proofs:
        result = check_proof(case.proof, binder_restriction=mutate != "R1")
        if not result.accepted:
            section.record(case.label, not case.accepted, f"rejected: {result.reason}")
            continue
        hypotheses = [expand(h) for h in case.proof.hypotheses]
        conclusion = expand(case.proof.conclusion)
        failing = next(
            (m for m in _models(frames, [*hypotheses, conclusion]) if not entails(m, hypotheses, conclusion)),
            None,
        )
        if not case.accepted:
            unsound = "" if failing is None else f"; the conclusion fails in {failing!r}"
            section.record(case.label, False, f"accepted, but must be rejected{unsound}")
            continue
        section.record(
            case.label,
            failing is None,
            f"{print_wff(case.proof.conclusion)} does not follow from the hypotheses in {failing!r}",
        )
    return section


def _proof_holds(proof: Proof, frames: Sequence[Frame]) -> str:
    """Empty if ``proof`` is accepted and its conclusion is valid in the catalog models."""
    result = check_proof(proof)
    if not result.accepted:
        return f"rejected: {result.reason}"
    conclusion = expand(proof.conclusion)
    for frame in frames:
        model = catalog_model(frame)
        if not is_valid_in_model(model, conclusion):
            return f"conclusion fails in {_counter_example(model, conclusion)}"
    return ""


def _tactics(catalog: Catalog, frames: Sequence[Frame]) -> SectionResult:
    section = SectionResult("tactics")
    for wff in catalog.tactic_inputs:
        text = print_wff(wff)
        tactics: list[tuple[str, Callable[[Wff], Proof]]] = [("lemma1", tactic_lemma1)]
        if infer_type(wff) == OMICRON:
            tactics.append(("odefined", tactic_odefined))
        tactics.append(("selfeq", tactic_self_equality))
        for name, tactic in tactics:
            try:
                proof = tactic(wff)
            except TacticError:
                # Self-equality only covers wffs whose definedness is an axiom instance
                continue
            except Q0uError as exc:
                section.record(f"{name}({text})", False, exc.message)
                continue
            problem = _proof_holds(proof, frames)
            section.record(f"{name}({text})", not problem, problem)
    return section


def _totality(catalog: Catalog, frames: Sequence[Frame]) -> SectionResult:
    section = SectionResult("totality")
    models = [catalog_model(frame) for frame in frames]
    for n, wff in enumerate(catalog.formulas, start=1):
        undefined = ""
        for model in models:
            for phi in assignments(model.frame, free_vars(wff)):
                if valuate(model, phi, wff) is None:
                    undefined = f"{print_wff(wff)} is undefined in {model!r}"
                    break
            if undefined:
                break
        section.record(f"formula {n}", not undefined, undefined)
    return section


def _undefinedness(frames: Sequence[Frame]) -> SectionResult:
    section = SectionResult("undefinedness")
    bottom = Abbrev(AbbrevName.BOTTOM, (IOTA,))
    f = Var("f", Arrow(OMICRON, IOTA))
    for frame in frames:
        model = catalog_model(frame)
        size = len(frame.base)
        value = valuate(model, {}, expand(bottom))
        section.record(f"bot_i |D_i|={size}", value is None, f"bot_i denotes {render_value(value)}")
        for text, expected in (("def(bot_i)", False), ("undef(bot_i)", True)):
            value = valuate(model, {}, expand(parse_wff(text)))
            section.record(f"{text} |D_i|={size}", value is expected, f"{text} is {render_value(value)}")
        applied = expand(App(f, bottom))
        values = {valuate(model, phi, applied) for phi in assignments(frame, [f])}
        section.record(
            f"f_(oi) bot_i |D_i|={size}",
            values == {False},
            f"f_(oi) bot_i takes {sorted(render_value(v) for v in values)}",
        )
    return section


def _tautologies(catalog: Catalog) -> SectionResult:
    section = SectionResult("tautology")
    if not catalog.propositional:
        return section
    model = Model(Frame(["a"]), {})
    for wff in catalog.propositional:
        oracle = tautologous(wff)
        semantic = is_valid_in_model(model, expand(wff))
        section.record(
            print_wff(wff),
            oracle == semantic,
            f"tautologous={oracle} but valid={semantic}",
        )
    return section


def _round_trip(catalog: Catalog) -> SectionResult:
    section = SectionResult("roundtrip")
    for wff in catalog.printable:
        text = print_wff(wff)
        try:
            ok = parse_wff(text, CATALOG_SIGNATURE) == wff
        except Q0uError as exc:
            section.record(text, False, exc.message)
            continue
        section.record(text, ok, "parsed to a different wff")
    return section


def _consistency(catalog: Catalog, frames: Sequence[Frame]) -> SectionResult:
    section = SectionResult("consistency")
    false = expand(FALSE)
    for frame in frames:
        model = catalog_model(frame)
        section.record(f"F |D_i|={len(frame.base)}", not is_valid_in_model(model, false), "F is valid")
    for case in catalog.axioms:
        section.record(case.label, case.instance != false, "the axiom instance is F")
    for case in catalog.hypothesis_proofs:
        if not case.proof.hypotheses:
            section.record(case.label, expand(case.proof.conclusion) != false, "proves F")
    for wff in catalog.tactic_inputs:
        proof = tactic_lemma1(wff)
        section.record(f"lemma1({print_wff(wff)})", expand(proof.conclusion) != false, "proves F")
    return section


def check_soundness_suite(
    catalog: Catalog, frames: Sequence[Frame], mutate: str | None = None
) -> SuiteResult:
    """Run every section of the battery; an empty catalog yields an empty, passing result."""
    suite = SuiteResult(mutation=mutate)
    suite.sections += [
        _axioms(catalog, frames, mutate),
        _rules(catalog, frames),
        _hypotheses(catalog, frames, mutate),
        _tactics(catalog, frames),
        _totality(catalog, frames),
    ]
    if catalog.semantic_laws:
        suite.sections.append(_undefinedness(frames))
    suite.sections += [_tautologies(catalog), _round_trip(catalog)]
    if catalog.semantic_laws:
        suite.sections.append(_consistency(catalog, frames))
    for section in suite.sections:
        log = logger.info if section.passed else logger.warning
        log(
            "Self-check section",
            extra={"section": section.name, "checked": section.checked, "failed": len(section.failures)},
        )
    return suite
