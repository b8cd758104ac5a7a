"""
Catalog service: the fixed test material of the self-check battery.

Everything here is written against one small signature (``CATALOG_SIGNATURE``)
so that sweeping all interpretations of the constants a case mentions stays
within the domain size cap on one- and two-element frames. Generated material
is deterministic: random wffs for a given seed, propositional formulas
always.
"""

import itertools
import random
from collections import deque
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from app.models.proof import (
    R1,
    R2,
    Axiom,
    AxiomSchema,
    Hyp,
    OccurrencePath,
    Param,
    PathStep,
    Proof,
    ProofStep,
    TheoremImport,
)
from app.models.signature import Signature
from app.models.types import IOTA, OMICRON, Arrow, TypeSymbol, arrow
from app.models.wff import Abbrev, AbbrevName, Abs, App, Const, Var, Wff, iota_const, q_const
from app.services.abbrev import expand, fold, make_abbrev, match_quasi_equality
from app.services.kernel import apply_r1, apply_r2, instantiate_axiom
from app.services.parser import parse_wff
from app.services.semantics import Frame, Model
from app.services.substitution import find_occurrences
from app.services.tactics import tactic_lemma1, tactic_lemma2

OI = Arrow(OMICRON, IOTA)
II = Arrow(IOTA, IOTA)
OII = arrow(OMICRON, IOTA, IOTA)

CATALOG_SIGNATURE = Signature({"c": IOTA, "d": IOTA, "p": OI, "k": II, "r": OII})


def w(text: str) -> Wff:
    """Parse ``text`` against the catalog signature."""
    return parse_wff(text, CATALOG_SIGNATURE)


def _var(text: str) -> Var:
    wff = w(text)
    assert isinstance(wff, Var)
    return wff


def _const(text: str) -> Const:
    wff = w(text)
    assert isinstance(wff, Const)
    return wff


# --- Axiom instances ---


@dataclass(frozen=True)
class AxiomCase:
    label: str
    schema: AxiomSchema
    params: dict[str, Param] = field(default_factory=dict)

    @property
    def instance(self) -> Wff:
        return instantiate_axiom(self.schema, self.params)


def _wffs(**params: str) -> dict[str, Param]:
    return {name: _var(text) if name == "x" else w(text) for name, text in params.items()}


@lru_cache(maxsize=1)
def axiom_cases() -> tuple[AxiomCase, ...]:
    cases: list[tuple[AxiomSchema, dict[str, Param]]] = [(AxiomSchema.A1, {})]
    cases += [(AxiomSchema.A2, {"alpha": t}) for t in (IOTA, OMICRON, OI)]
    cases += [
        (AxiomSchema.A3, {"alpha": a, "beta": b})
        for a, b in ((IOTA, IOTA), (OMICRON, IOTA), (IOTA, OMICRON), (OMICRON, OI))
    ]
    cases += [
        (AxiomSchema.A4, _wffs(x="x_i", B="x_i", A="c")),
        (AxiomSchema.A4, _wffs(x="x_i", B="p x_i", A="bot_i")),
        (AxiomSchema.A4, _wffs(x="x_(oi)", B="x_(oi) c", A="\\x_i. p x_i")),
        (AxiomSchema.A4, _wffs(x="x_o", B="\\y_o. x_o /\\ y_o", A="p c")),
        (AxiomSchema.A4, _wffs(x="x_i", B="forall y_i. r x_i y_i", A="k c")),
    ]
    cases += [(AxiomSchema.A5, {"x": _var(v)}) for v in ("x_i", "x_o", "f_(oi)", "x_(o(oi))")]
    cases += [(AxiomSchema.A6, {"c": _const(c)}) for c in ("c", "k", "r", "Q_i", "iota_i")]
    cases += [
        (AxiomSchema.A7, _wffs(x="x_i", B="x_i")),
        (AxiomSchema.A7, _wffs(x="x_i", B="bot_i")),
        (AxiomSchema.A7, _wffs(x="x_(oi)", B="x_(oi) c")),
        (AxiomSchema.A7, _wffs(x="x_o", B="~x_o")),
    ]
    cases += [
        (AxiomSchema.A8, _wffs(A=a, B=b))
        for a, b in (("p", "c"), ("p", "bot_i"), ("\\x_i. x_i = c", "d"), ("r c", "k d"), ("Q_i c", "bot_i"))
    ]
    cases += [
        (AxiomSchema.A9, _wffs(A=a, B=b))
        for a, b in (("p", "bot_i"), ("p", "c"), ("r c", "k c"), ("\\x_i. T", "bot_i"), ("f_(oi)", "k x_i"))
    ]
    cases += [
        (AxiomSchema.A10, _wffs(A=a, B=b))
        for a, b in (
            ("k", "bot_i"),
            ("k", "c"),
            ("\\x_i. bot_i", "c"),
            ("f_(ii)", "k x_i"),
            ("iota_i", "\\x_i. p x_i"),
        )
    ]
    cases += [
        (AxiomSchema.A11, _wffs(A=a, B=b))
        for a, b in (("c", "d"), ("bot_i", "c"), ("k c", "k d"), ("x_o", "T"), ("p", "\\x_i. r x_i x_i"))
    ]
    descriptions = (
        ("x_i", "x_i = c"),
        ("x_i", "p x_i"),
        ("x_i", "x_i /= x_i"),
        ("x_(oi)", "x_(oi) = p"),
    )
    for schema in (AxiomSchema.A12, AxiomSchema.A13):
        cases += [(schema, _wffs(x=x, A=a)) for x, a in descriptions]

    labelled: list[AxiomCase] = []
    for schema, group in itertools.groupby(cases, key=lambda case: case[0]):
        for n, (_, params) in enumerate(group, start=1):
            labelled.append(AxiomCase(f"{schema.value}.{n}", schema, params))
    return tuple(labelled)


# --- Rule applications ---


@dataclass(frozen=True)
class RuleCase:
    """One R1 or R2 application: premises in rule order and, for R1, a path."""

    label: str
    rule: str
    premises: tuple[Wff, Wff]
    path: OccurrencePath = ()

    @cached_property
    def conclusion(self) -> Wff:
        first, second = self.premises
        if self.rule == "R1":
            return apply_r1(first, second, self.path)
        return apply_r2(first, second)


_R1_TEXTS = (
    ("c ~= d", "def(c)", 0),
    ("c ~= d", "p c", 0),
    ("c ~= d", "r c c", 0),
    ("c ~= d", "r c c", 1),
    ("k c ~= d", "p (k c)", 0),
    ("k c ~= k d", "def(k c)", 0),
    ("bot_i ~= c", "p bot_i", 0),
    ("bot_i ~= k c", "undef(bot_i)", 0),
    ("x_i ~= c", "p x_i", 0),
    ("p ~= [\\x_i. r x_i x_i]", "p c", 0),
    ("p d ~= T", "p d /\\ x_o", 0),
    ("T ~= F", "T", 0),
    ("[\\x_i. x_i] c ~= c", "p ([\\x_i. x_i] c)", 0),
    ("c ~= c", "forall x_i. r x_i c", 0),
    ("c ~= d", "forall x_i. r x_i c", 0),
    ("k ~= [\\x_i. c]", "def(k d)", 0),
    ("p c ~= T", "p c \\/ F", 0),
    ("r c d ~= T", "r c d => p c", 0),
    ("f_(oi) ~= p", "f_(oi) c = p c", 0),
    ("iota_i p ~= c", "def(iota_i p)", 0),
    ("c ~= k c", "exists x_i. x_i = c", 0),
    ("[\\x_i. p x_i] ~= p", "[\\x_i. p x_i] d", 0),
)

_R2_TEXTS = (
    ("T", "T => T"),
    ("p c", "p c => p c \\/ p d"),
    ("x_o", "x_o => x_o /\\ x_o"),
    ("c = d", "c = d => p c = p d"),
    ("def(k c)", "def(k c) => p (k c) \\/ ~p (k c)"),
    ("p c", "p c => r c c"),
    ("def(x_i)", "def(x_i) => [\\y_i. y_i] x_i ~= x_i"),
    ("x_o /\\ y_o", "x_o /\\ y_o => y_o"),
    ("forall x_i. p x_i", "[forall x_i. p x_i] => p c"),
    ("~p c", "~p c => undef(k c)"),
    ("undef(bot_i)", "undef(bot_i) => ~p bot_i"),
    ("c ~= d", "c ~= d => [def(c) => c = d]"),
    ("r c d", "r c d => r d c"),
    ("F", "F => x_o"),
    ("exists x_i. p x_i", "[exists x_i. p x_i] => ~[forall x_i. ~p x_i]"),
    ("k c = d", "k c = d => def(k c)"),
    ("x_i = y_i", "x_i = y_i => p x_i = p y_i"),
    ("def(iota_i p)", "def(iota_i p) => p (iota_i p)"),
    ("p = [\\x_i. T]", "p = [\\x_i. T] => p c"),
    ("y_o", "y_o => [x_o => y_o]"),
    ("T", "T => [x_o \\/ ~x_o]"),
)


@lru_cache(maxsize=1)
def rule_cases() -> tuple[RuleCase, ...]:
    cases: list[RuleCase] = []
    for n, (eq_text, target_text, occurrence) in enumerate(_R1_TEXTS, start=1):
        eq, target = expand(w(eq_text)), expand(w(target_text))
        operands = match_quasi_equality(eq)
        assert operands is not None
        path = find_occurrences(target, operands[0])[occurrence]
        cases.append(RuleCase(f"R1.{n}", "R1", (eq, target), path))
    for n, (minor, major) in enumerate(_R2_TEXTS, start=1):
        cases.append(RuleCase(f"R2.{n}", "R2", (expand(w(minor)), expand(w(major)))))
    return tuple(cases)


# --- Proofs from hypotheses ---


@dataclass(frozen=True)
class HypothesisCase:
    """A proof from hypotheses and whether the kernel must accept it."""

    label: str
    proof: Proof
    accepted: bool


def _imported_lemma1(hypothesis: str, abstraction: str, path: OccurrencePath, label: str) -> Proof:
    """x ≃ c as hypothesis, Lemma 1 for an abstraction, then R1 inside it."""
    theorem = tactic_lemma1(w(abstraction)).main_section
    h = w(hypothesis)
    imported = expand(theorem[-1].wff)
    replaced = apply_r1(expand(h), imported, path)
    steps = [
        ProofStep(h, Hyp(0)),
        ProofStep(theorem[-1].wff, TheoremImport(len(theorem) - 1)),
        ProofStep(fold(replaced), R1(0, 1, path)),
    ]
    return Proof.of(steps, hypotheses=(h,), theorem_section=theorem, label=label)


@lru_cache(maxsize=1)
def hypothesis_cases() -> tuple[HypothesisCase, ...]:
    arg = (PathStep.ARG,)
    cases = [
        HypothesisCase(
            "hyp-member",
            Proof.of([ProofStep(w("p x_i"), Hyp(0))], hypotheses=(w("p x_i"),), label="hyp-member"),
            True,
        ),
        HypothesisCase(
            "hyp-r1",
            Proof.of(
                [
                    ProofStep(w("c ~= d"), Hyp(0)),
                    ProofStep(w("p c"), Hyp(1)),
                    ProofStep(w("p d"), R1(0, 1, arg)),
                ],
                hypotheses=(w("c ~= d"), w("p c")),
                label="hyp-r1",
            ),
            True,
        ),
        HypothesisCase(
            "hyp-r2",
            Proof.of(
                [
                    ProofStep(w("x_o"), Hyp(0)),
                    ProofStep(w("x_o => y_o"), Hyp(1)),
                    ProofStep(w("y_o"), R2(0, 1)),
                ],
                hypotheses=(w("x_o"), w("x_o => y_o")),
                label="hyp-r2",
            ),
            True,
        ),
        HypothesisCase(
            "hyp-axiom",
            Proof.of(
                [
                    ProofStep(w("p c"), Hyp(0)),
                    ProofStep(w("def(p c)"), Axiom(AxiomSchema.A8, {"A": w("p"), "B": w("c")})),
                ],
                hypotheses=(w("p c"),),
                label="hyp-axiom",
            ),
            True,
        ),
        HypothesisCase(
            "hyp-r1-other-binder",
            _imported_lemma1(
                "x_i ~= c",
                "\\y_i. r y_i x_i",
                (PathStep.ARG, PathStep.ARG, PathStep.BODY, PathStep.ARG),
                "hyp-r1-other-binder",
            ),
            True,
        ),
        # x_i is free in the hypothesis and bound above the replaced occurrence
        HypothesisCase(
            "hyp-r1-captured",
            _imported_lemma1(
                "x_i ~= c",
                "\\x_i. x_i",
                (PathStep.ARG, PathStep.ARG, PathStep.BODY),
                "hyp-r1-captured",
            ),
            False,
        ),
        HypothesisCase("lemma2-c-d", tactic_lemma2(w("c"), w("d")), True),
        HypothesisCase("lemma2-kc-kd", tactic_lemma2(w("k c"), w("k d")), True),
    ]
    return tuple(cases)


# --- Tactic inputs ---

TACTIC_TEXTS = (
    "c",
    "x_i",
    "bot_i",
    "k c",
    "k bot_i",
    "p c",
    "p bot_i",
    "x_o",
    "T",
    "F",
    "\\x_i. p x_i",
    "r c",
    "iota_i p",
    "I x_i. x_i = c",
    "x_o /\\ y_o",
    "forall x_i. p x_i",
    "def(k c)",
    "Q_i c",
    "f_(oi)",
    "[\\x_i. k x_i] c",
)


@lru_cache(maxsize=1)
def tactic_wffs() -> tuple[Wff, ...]:
    return tuple(w(text) for text in TACTIC_TEXTS)


# --- Models ---


def catalog_model(frame: Frame) -> Model:
    """A fixed interpretation of the catalog signature with a partial ``k``."""
    first, last = frame.base[0], frame.base[-1]
    sig = CATALOG_SIGNATURE.constants
    p = frame.graph(OI, {d: d == first for d in frame.base})
    k = frame.graph(II, {first: last})
    r = frame.graph(OII, {d: frame.graph(OI, {e: e == d for e in frame.base}) for d in frame.base})
    return Model(
        frame,
        {
            Const("c", sig["c"]): first,
            Const("d", sig["d"]): last,
            Const("p", sig["p"]): p,
            Const("k", sig["k"]): k,
            Const("r", sig["r"]): r,
        },
    )


# --- Generated wffs ---


class WffGenerator:
    """Seeded random wffs over the catalog signature.

    Binders range over individuals only and free variables are drawn from
    ``x``/``y`` at types i, o, oi and ii, which keeps every domain the
    valuation touches small. With ``surface=True`` folded abbreviations are
    mixed in.
    """

    _TYPES: tuple[TypeSymbol, ...] = (IOTA, OMICRON, OI, II)

    def __init__(self, seed: int, *, surface: bool = False) -> None:
        self._rng = random.Random(seed)
        self._surface = surface
        self._constants: dict[TypeSymbol, list[Wff]] = {t: [] for t in self._TYPES}
        for name, t in CATALOG_SIGNATURE.constants.items():
            if t in self._constants:
                self._constants[t].append(Const(name, t))

    def formula(self, depth: int) -> Wff:
        return self.term(OMICRON, depth)

    def term(self, t: TypeSymbol, depth: int) -> Wff:
        if depth <= 0 or self._rng.random() < 0.25:
            return self._leaf(t)
        builders = self._compound(t, depth - 1)
        return self._rng.choice(builders)()

    def _leaf(self, t: TypeSymbol) -> Wff:
        choices: list[Wff] = [Var(name, t) for name in ("x", "y")] + self._constants[t]
        if t == IOTA:
            choices.append(Abbrev(AbbrevName.BOTTOM, (IOTA,)))
        if t == OMICRON:
            choices += [Abbrev(AbbrevName.TRUE), Abbrev(AbbrevName.FALSE)]
        leaf = self._rng.choice(choices)
        return leaf if self._surface else expand(leaf)

    def _abbrev(self, name: AbbrevName, *args: Wff | TypeSymbol) -> Wff:
        node = make_abbrev(name, *args)
        return node if self._surface else expand(node)

    def _compound(self, t: TypeSymbol, d: int) -> list[Callable[[], Wff]]:
        term = self.term
        x_i = Var(self._rng.choice(("x", "y")), IOTA)
        builders: list[Callable[[], Wff]] = []
        if t in (OMICRON, IOTA):
            fun_type = Arrow(t, IOTA)
            builders.append(lambda: App(term(fun_type, d), term(IOTA, d)))
        if t == OMICRON:
            s = self._rng.choice((IOTA, OMICRON, OI))
            builders += [
                lambda: App(App(q_const(s), term(s, d)), term(s, d)),
                lambda: self._abbrev(AbbrevName.NOT, term(OMICRON, d)),
                lambda: self._abbrev(AbbrevName.AND, term(OMICRON, d), term(OMICRON, d)),
                lambda: self._abbrev(AbbrevName.IMPLIES, term(OMICRON, d), term(OMICRON, d)),
                lambda: self._abbrev(AbbrevName.FORALL, x_i, term(OMICRON, d)),
                lambda: self._abbrev(AbbrevName.IS_DEFINED, term(IOTA, d)),
                lambda: App(Abs(x_i, term(OMICRON, d)), term(IOTA, d)),
            ]
        if t == IOTA:
            builders += [
                lambda: App(iota_const(IOTA), term(OI, d)),
                lambda: App(Abs(x_i, term(IOTA, d)), term(IOTA, d)),
            ]
        if isinstance(t, Arrow):
            codomain = t.codomain
            builders.append(lambda: Abs(x_i, term(codomain, d)))
        if t == OI:
            builders += [
                lambda: App(Const("r", OII), term(IOTA, d)),
                lambda: App(q_const(IOTA), term(IOTA, d)),
            ]
        return builders


def generated_formulas(count: int, seed: int, depth: int = 5) -> list[Wff]:
    """``count`` core wffs of type o with nesting depth at most ``depth``."""
    gen = WffGenerator(seed)
    return [gen.formula(depth) for _ in range(count)]


def generated_wffs(count: int, seed: int, depth: int = 5) -> list[Wff]:
    """A mix of core and folded wffs of every generated type, for printing and parsing."""
    core, surface = WffGenerator(seed), WffGenerator(seed + 1, surface=True)
    rng = random.Random(seed)
    result: list[Wff] = []
    for n in range(count):
        gen = surface if n % 2 else core
        result.append(gen.term(rng.choice(WffGenerator._TYPES), depth))
    return result


# --- Propositional formulas ---

PROPOSITIONAL_ATOMS = tuple(Var(name, OMICRON) for name in ("x", "y", "z"))
_PROP_LEAVES: tuple[Wff, ...] = (*PROPOSITIONAL_ATOMS, Abbrev(AbbrevName.TRUE), Abbrev(AbbrevName.FALSE))
_PROP_BINARY = (
    AbbrevName.AND,
    AbbrevName.OR,
    AbbrevName.IMPLIES,
    AbbrevName.EQUALS,
    AbbrevName.NOT_EQUALS,
)


def _round_robin(*streams: Iterable[Wff]) -> Iterator[Wff]:
    """One item from each stream in turn, dropping streams as they run out."""
    iterators = deque(iter(s) for s in streams)
    while iterators:
        it = iterators.popleft()
        try:
            yield next(it)
        except StopIteration:
            continue
        iterators.append(it)


class _Cached:
    """A lazily materialized sequence that several consumers can index."""

    def __init__(self, source: Iterator[Wff]) -> None:
        self._source = source
        self._items: list[Wff] = []

    def has(self, index: int) -> bool:
        while len(self._items) <= index:
            item = next(self._source, None)
            if item is None:
                return False
            self._items.append(item)
        return True

    def __getitem__(self, index: int) -> Wff:
        return self._items[index]

    def __iter__(self) -> Iterator[Wff]:
        index = 0
        while self.has(index):
            yield self._items[index]
            index += 1


def _diagonal(left: _Cached, right: _Cached) -> Iterator[tuple[Wff, Wff]]:
    """Every pair of ``left`` x ``right``, by increasing sum of indices."""
    total = 0
    while True:
        found = False
        for i in range(total + 1):
            if not left.has(i):
                break
            if right.has(total - i):
                found = True
                yield left[i], right[total - i]
        if not found:
            return
        total += 1


class _PropositionalEnumeration:
    """Formulas of each exact connective depth in one fixed order.

    Depth d > 0 interleaves ~A with every binary connective applied to the
    pairs whose deeper operand has depth d - 1. Each level is built lazily,
    so deep levels cost only the prefix that is read.
    """

    def __init__(self) -> None:
        self._exact: dict[int, _Cached] = {}
        self._up_to: dict[int, _Cached] = {}

    def exact(self, depth: int) -> _Cached:
        if depth not in self._exact:
            self._exact[depth] = _Cached(self._level(depth))
        return self._exact[depth]

    def up_to(self, depth: int) -> _Cached:
        if depth not in self._up_to:
            levels = (self.exact(d) for d in range(depth + 1))
            self._up_to[depth] = _Cached(itertools.chain.from_iterable(levels))
        return self._up_to[depth]

    def _level(self, depth: int) -> Iterator[Wff]:
        if depth == 0:
            yield from _PROP_LEAVES
            return
        top = self.exact(depth - 1)
        streams: list[Iterable[Wff]] = [(Abbrev(AbbrevName.NOT, (a,)) for a in top)]
        for name in _PROP_BINARY:
            # deeper operand on the left, then a strictly shallower left operand
            streams.append(self._binary(name, top, self.up_to(depth - 1)))
            if depth > 1:
                streams.append(self._binary(name, self.up_to(depth - 2), top))
        yield from _round_robin(*streams)

    @staticmethod
    def _binary(name: AbbrevName, left: _Cached, right: _Cached) -> Iterator[Wff]:
        return (Abbrev(name, (a, b)) for a, b in _diagonal(left, right))


def propositional_formulas(count: int, max_depth: int = 4) -> list[Wff]:
    """The first ``count`` formulas over x_o, y_o, z_o, T and F, taking the
    depths 0 to ``max_depth`` in turn."""
    enumeration = _PropositionalEnumeration()
    levels = [enumeration.exact(d) for d in range(max_depth + 1)]
    return list(itertools.islice(_round_robin(*levels), count))


@dataclass(frozen=True)
class Catalog:
    """Material for ``check_soundness_suite``.

    ``semantic_laws`` adds the catalog-independent checks (undefinedness of
    bot_i, F not valid) that run once per frame.
    """

    semantic_laws: bool = False
    axioms: tuple[AxiomCase, ...] = ()
    rules: tuple[RuleCase, ...] = ()
    hypothesis_proofs: tuple[HypothesisCase, ...] = ()
    tactic_inputs: tuple[Wff, ...] = ()
    formulas: tuple[Wff, ...] = ()
    printable: tuple[Wff, ...] = ()
    propositional: tuple[Wff, ...] = ()


def default_catalog(
    *, generated: int = 500, propositional: int = 1000, seed: int = 5210
) -> Catalog:
    return Catalog(
        semantic_laws=True,
        axioms=axiom_cases(),
        rules=rule_cases(),
        hypothesis_proofs=hypothesis_cases(),
        tactic_inputs=tactic_wffs(),
        formulas=tuple(generated_formulas(generated, seed)),
        printable=tuple(generated_wffs(generated, seed)),
        propositional=tuple(propositional_formulas(propositional)),
    )
