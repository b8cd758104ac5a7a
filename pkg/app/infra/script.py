"""
Proof scripts: a line-oriented text format for theories and their proofs.

    theory demo
    const c : i
    proof refl_c : "c ~= c"
      1. "def(x^1_i)"  axiom A5 {x := x^1_i}
      ...
    qed 5

Steps and hypotheses are numbered from 1 in scripts and from 0 in the kernel.
``thm <label>.<n>`` imports step n of an earlier hypothesis-free proof: the
referenced proofs are laid out, in order of first reference, as the
theorem section of the importing proof.
"""

import logging
import re
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path

from app.core.exceptions import Q0uError, ScriptReferenceError, ScriptSyntaxError
from app.infra.files import read_text
from app.models.proof import (
    R1,
    R2,
    Axiom,
    AxiomSchema,
    Derived,
    DerivedRule,
    Hyp,
    Justification,
    OccurrencePath,
    Param,
    PathStep,
    Proof,
    ProofStep,
    TheoremImport,
)
from app.models.signature import Signature
from app.models.types import TypeSymbol
from app.models.wff import Wff
from app.services.abbrev import expand, fold
from app.services.kernel import TYPE_PARAMS, render_path
from app.services.parser import parse_type, parse_wff
from app.services.syntax import print_type, print_wff

logger = logging.getLogger(__name__)

_THEORY_RE = re.compile(r"theory\s+(?P<name>\S+)")
_CONST_RE = re.compile(r"const\s+(?P<name>\S+)\s*:\s*(?P<type>\S+)")
_PROOF_RE = re.compile(
    r"""
    proof\s+(?P<label>[A-Za-z_][\w-]*)\s*
    (?:hyps:\s*(?P<hyps>(?:"[^"]*"\s*;?\s*)+))?     # optional quoted hypotheses
    :\s*"(?P<conclusion>[^"]*)"
    """,
    re.VERBOSE,
)
_STEP_RE = re.compile(r'(?P<number>\d+)\.\s*"(?P<wff>[^"]*)"\s+(?P<justification>.+)')
_QED_RE = re.compile(r"qed\s+(?P<count>\d+)")
_QUOTED_RE = re.compile(r'"([^"]*)"')

_AXIOM_RE = re.compile(r"axiom\s+(?P<schema>A\d+)\s*(?:\{(?P<params>.*)\})?")
_HYP_RE = re.compile(r"hyp\s+(?P<index>\d+)")
_THM_RE = re.compile(r"thm\s+(?P<label>[A-Za-z_][\w-]*)\.(?P<step>\d+)")
_R1_RE = re.compile(r"R1\s+(?P<eq>\d+)\s+(?P<target>\d+)\s+at\s+(?P<path>\S+)")
_R2_RE = re.compile(r"R2\s+(?P<minor>\d+)\s+(?P<major>\d+)")
_DERIVED_RE = re.compile(
    r"""
    derived\s+(?P<rule>[a-z0-9]+)
    (?P<premises>(?:\s+\d+)*)
    (?:\s+(?P<sublabel>[A-Za-z_][\w-]*))?        # sub-proof of a deduction step
    (?:\s+at\s+(?P<path>\S+))?
    \s*(?:\{(?P<params>.*)\})?
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Script:
    theory: str
    signature: Signature
    proofs: tuple[Proof, ...] = ()

    def proof(self, label: str) -> Proof:
        for proof in self.proofs:
            if proof.label == label:
                return proof
        raise ScriptReferenceError(f"No proof labelled {label!r}", details={"label": label})


def _strip_comment(line: str) -> str:
    """Drop a ``#`` comment that is not inside a quoted wff."""
    quoted = False
    for i, ch in enumerate(line):
        if ch == '"':
            quoted = not quoted
        elif ch == "#" and not quoted:
            return line[:i]
    return line


def parse_path(text: str) -> OccurrencePath:
    if text == "root":
        return ()
    try:
        return tuple(PathStep(step) for step in text.split("."))
    except ValueError:
        raise ValueError(f"{text!r} is not a path of fun/arg/body steps or 'root'") from None


def _split_params(text: str) -> Iterator[tuple[str, str]]:
    """``name := value`` pairs separated by ``;`` outside quotes."""
    parts: list[str] = []
    current: list[str] = []
    quoted = False
    for ch in text:
        if ch == '"':
            quoted = not quoted
        if ch == ";" and not quoted:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    for part in parts:
        if not part.strip():
            continue
        name, sep, value = part.partition(":=")
        if not sep:
            raise ValueError(f"parameter {part.strip()!r} is not of the form name := value")
        value = value.strip()
        if len(value) >= 2 and value[0] == value[-1] == '"':
            value = value[1:-1]
        yield name.strip(), value


@dataclass
class _OpenProof:
    label: str
    line: int
    conclusion: Wff
    hypotheses: tuple[Wff, ...]
    steps: list[ProofStep] = field(default_factory=list)
    # label -> offset of that proof's steps inside the theorem section
    imports: dict[str, int] = field(default_factory=dict)
    theorem_section: list[ProofStep] = field(default_factory=list)


class _ScriptReader:
    def __init__(self, text: str) -> None:
        self._lines = text.splitlines()
        self._theory = ""
        self._signature = Signature()
        self._proofs: dict[str, Proof] = {}
        self._open: _OpenProof | None = None
        self._line = 0

    def read(self) -> Script:
        for number, raw in enumerate(self._lines, start=1):
            self._line = number
            line = _strip_comment(raw).strip()
            if not line:
                continue
            try:
                self._statement(line)
            except ScriptSyntaxError:
                raise
            except ScriptReferenceError as exc:
                details = exc.details if isinstance(exc.details, dict) else {}
                exc.details = details | {"line": number}
                raise
            except Q0uError as exc:
                raise ScriptSyntaxError(number, exc.message) from exc
            except ValueError as exc:
                raise ScriptSyntaxError(number, str(exc)) from exc
        if self._open is not None:
            raise ScriptSyntaxError(
                self._open.line, f"proof {self._open.label} is not terminated by qed"
            )
        return Script(self._theory, self._signature, tuple(self._proofs.values()))

    def _fail(self, reason: str) -> ScriptSyntaxError:
        return ScriptSyntaxError(self._line, reason)

    def _wff(self, text: str) -> Wff:
        return parse_wff(text, self._signature)

    # --- Statements ---

    def _statement(self, line: str) -> None:
        if self._open is not None:
            if m := _QED_RE.fullmatch(line):
                self._close(int(m["count"]))
            elif m := _STEP_RE.fullmatch(line):
                self._step(int(m["number"]), m["wff"], m["justification"].strip())
            else:
                raise self._fail(f"expected a numbered step or qed, found {line!r}")
        elif m := _THEORY_RE.fullmatch(line):
            if self._theory:
                raise self._fail("the theory is already named")
            self._theory = m["name"]
        elif m := _CONST_RE.fullmatch(line):
            self._signature = self._signature.declare(m["name"], parse_type(m["type"]))
        elif m := _PROOF_RE.fullmatch(line):
            self._begin(m["label"], m["hyps"] or "", m["conclusion"])
        else:
            raise self._fail(f"expected theory, const or proof, found {line!r}")

    def _begin(self, label: str, hyps: str, conclusion: str) -> None:
        if label in self._proofs:
            raise ScriptReferenceError(f"Proof {label!r} is defined twice", details={"label": label})
        self._open = _OpenProof(
            label=label,
            line=self._line,
            conclusion=self._wff(conclusion),
            hypotheses=tuple(self._wff(h) for h in _QUOTED_RE.findall(hyps)),
        )

    def _step(self, number: int, wff: str, justification: str) -> None:
        assert self._open is not None
        expected = len(self._open.steps) + 1
        if number != expected:
            raise self._fail(f"step {number} out of order, expected {expected}")
        claimed = self._wff(wff)
        self._open.steps.append(ProofStep(claimed, self._justification(justification, claimed)))

    def _close(self, count: int) -> None:
        proof = self._open
        assert proof is not None
        if count != len(proof.steps):
            raise self._fail(f"qed {count} but proof {proof.label} has {len(proof.steps)} steps")
        self._proofs[proof.label] = Proof(
            main_section=tuple(proof.steps),
            conclusion=proof.conclusion,
            hypotheses=proof.hypotheses,
            theorem_section=tuple(proof.theorem_section),
            label=proof.label,
        )
        logger.debug("Proof read", extra={"label": proof.label, "steps": count})
        self._open = None

    # --- Justifications ---

    def _justification(self, text: str, claimed: Wff) -> Justification:
        if m := _AXIOM_RE.fullmatch(text):
            return self._axiom(m["schema"], m["params"] or "")
        if m := _HYP_RE.fullmatch(text):
            return Hyp(self._index(m["index"]))
        if m := _THM_RE.fullmatch(text):
            return self._import(m["label"], int(m["step"]))
        if m := _R1_RE.fullmatch(text):
            return R1(self._index(m["eq"]), self._index(m["target"]), parse_path(m["path"]))
        if m := _R2_RE.fullmatch(text):
            return R2(self._index(m["minor"]), self._index(m["major"]))
        if m := _DERIVED_RE.fullmatch(text):
            return self._derived(m, claimed)
        raise self._fail(f"unrecognized justification {text!r}")

    def _index(self, text: str) -> int:
        value = int(text)
        if value < 1:
            raise self._fail("step and hypothesis numbers start at 1")
        return value - 1

    def _axiom(self, schema: str, params: str) -> Axiom:
        try:
            axiom = AxiomSchema(schema)
        except ValueError:
            raise self._fail(f"unknown axiom schema {schema}") from None
        values: dict[str, Param] = {}
        for name, value in _split_params(params):
            values[name] = parse_type(value) if name in TYPE_PARAMS else self._wff(value)
        return Axiom(axiom, values)

    def _import(self, label: str, step: int) -> TheoremImport:
        proof = self._open
        assert proof is not None
        if label not in proof.imports:
            source = self._proofs.get(label)
            if source is None:
                raise ScriptReferenceError(
                    f"thm {label}.{step}: no earlier proof labelled {label!r}",
                    details={"label": label},
                )
            if source.hypotheses or source.theorem_section:
                raise ScriptReferenceError(
                    f"thm {label}.{step}: only proofs without hypotheses or imports can be imported",
                    details={"label": label},
                )
            proof.imports[label] = len(proof.theorem_section)
            proof.theorem_section.extend(
                _shifted(s, proof.imports[label]) for s in source.main_section
            )
        source_length = len(self._proofs[label].main_section)
        if not 1 <= step <= source_length:
            raise ScriptReferenceError(
                f"thm {label}.{step}: proof {label} has {source_length} steps",
                details={"label": label, "step": step},
            )
        return TheoremImport(proof.imports[label] + step - 1)

    def _derived(self, m: re.Match[str], claimed: Wff) -> Derived:
        try:
            rule = DerivedRule(m["rule"])
        except ValueError:
            raise self._fail(f"unknown derived rule {m['rule']}") from None
        premises = tuple(self._index(n) for n in m["premises"].split())
        params: dict[str, Param | Proof | OccurrencePath] = {}
        if m["path"]:
            params["path"] = parse_path(m["path"])
        for name, value in _split_params(m["params"] or ""):
            params[name] = self._wff(value)
        if m["sublabel"]:
            sub = self._proofs.get(m["sublabel"])
            if sub is None:
                raise ScriptReferenceError(
                    f"derived {rule.value}: no earlier proof labelled {m['sublabel']!r}",
                    details={"label": m["sublabel"]},
                )
            params["proof"] = sub
        if rule == DerivedRule.TAUT and "B" not in params:
            params["B"] = claimed
        return Derived(rule, premises, params)


def _shifted(step: ProofStep, offset: int) -> ProofStep:
    """``step`` with its step references moved ``offset`` places down."""
    match step.justification:
        case R1(eq_step=e, target_step=t, path=path):
            return ProofStep(step.wff, R1(e + offset, t + offset, path))
        case R2(minor=minor, major=major):
            return ProofStep(step.wff, R2(minor + offset, major + offset))
        case Derived(rule=rule, premises=premises, params=params):
            return ProofStep(step.wff, Derived(rule, tuple(p + offset for p in premises), params))
    return step


def parse_script(text: str) -> Script:
    script = _ScriptReader(text).read()
    logger.debug(
        "Script parsed",
        extra={"theory": script.theory, "constants": len(script.signature.constants), "proofs": len(script.proofs)},
    )
    return script


def load_script(path: str | Path) -> Script:
    return parse_script(read_text(path))


# --- Rendering ---


def _quoted(wff: Wff) -> str:
    return f'"{print_wff(fold(expand(wff)))}"'


def _render_params(params: Mapping[str, object]) -> str:
    rendered: list[str] = []
    for name, value in params.items():
        if isinstance(value, TypeSymbol):
            rendered.append(f"{name} := {print_type(value)}")
        elif isinstance(value, Wff):
            rendered.append(f"{name} := {_quoted(value)}")
    return " {" + "; ".join(rendered) + "}" if rendered else ""


class _ScriptWriter:
    def __init__(self) -> None:
        self.blocks: list[str] = []
        self.emitted: set[str] = set()

    def proof(self, proof: Proof, label: str) -> None:
        if label in self.emitted:
            return
        thm_label = f"{label}_thm"
        if proof.theorem_section:
            self.proof(Proof.of(list(proof.theorem_section), label=thm_label), thm_label)
        lines = [self._header(proof, label)]
        for number, step in enumerate(proof.main_section, start=1):
            justification = self._justification(step.justification, label, number, thm_label)
            lines.append(f"  {number}. {_quoted(step.wff)}  {justification}")
        lines.append(f"qed {len(proof.main_section)}")
        self.blocks.append("\n".join(lines))
        self.emitted.add(label)

    @staticmethod
    def _header(proof: Proof, label: str) -> str:
        hyps = ""
        if proof.hypotheses:
            hyps = "hyps: " + "; ".join(_quoted(h) for h in proof.hypotheses) + " "
        return f"proof {label} {hyps}: {_quoted(proof.conclusion)}"

    def _justification(
        self, justification: Justification, label: str, number: int, thm_label: str
    ) -> str:
        match justification:
            case Axiom(schema=schema, params=params):
                return f"axiom {schema.value}{_render_params(params)}"
            case Hyp(index=index):
                return f"hyp {index + 1}"
            case TheoremImport(index=index):
                return f"thm {thm_label}.{index + 1}"
            case R1(eq_step=e, target_step=t, path=path):
                return f"R1 {e + 1} {t + 1} at {render_path(path)}"
            case R2(minor=minor, major=major):
                return f"R2 {minor + 1} {major + 1}"
            case Derived(rule=rule, premises=premises, params=params):
                parts = [f"derived {rule.value}", *(str(p + 1) for p in premises)]
                sub = params.get("proof")
                if isinstance(sub, Proof):
                    sub_label = sub.label or f"{label}_sub{number}"
                    self.proof(sub, sub_label)
                    parts.append(sub_label)
                path = params.get("path")
                if isinstance(path, tuple):
                    parts.append(f"at {render_path(path)}")
                return " ".join(parts) + _render_params(params)
        raise TypeError(f"unknown justification {justification!r}")


def render_proof(proof: Proof) -> str:
    """The script text of ``proof``, preceded by the proofs it imports from."""
    writer = _ScriptWriter()
    writer.proof(proof, proof.label or "proof")
    return "\n\n".join(writer.blocks) + "\n"


def render_script(
    theory: str, signature: Signature, proofs: Sequence[Proof]
) -> str:
    header = [f"theory {theory}"]
    header += [f"const {name} : {print_type(t)}" for name, t in signature.constants.items()]
    writer = _ScriptWriter()
    for proof in proofs:
        writer.proof(proof, proof.label or "proof")
    return "\n".join(header) + "\n\n" + "\n\n".join(writer.blocks) + "\n"
