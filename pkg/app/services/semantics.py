"""
Finite standard models and the partial valuation.

Domains are enumerated on demand: D_i is the base, D_o is {True, False} and
D_(αβ) holds every graph from D_β to D_α, total when α = o and total or
partial otherwise. A graph lists its entries in the enumeration order of
D_β, so two functions are equal iff their entries are equal. An absent
entry means the function is undefined there.

A partial value is a domain element or ``None`` (undefined). Individuals are
their labels, truth values are Python booleans and functions are ``Graph``
instances.

Q and iota are never stored in a model. Applications of Q and of iota are
evaluated directly (identity test, unique member selection) so that the
large function spaces they range over are only enumerated when Q or iota
occur unapplied.
"""

import itertools
import logging
import string
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import Any

from app.config import settings
from app.core.exceptions import (
    AssignmentError,
    DomainSizeCapError,
    ModelDefinitionError,
    NonCoreWffError,
    TypeMismatchError,
)
from app.models.types import OMICRON, Arrow, Iota, TypeSymbol
from app.models.wff import (
    IOTA_NAME,
    Q_NAME,
    Abbrev,
    AbbrevName,
    Abs,
    App,
    Const,
    ConstKind,
    Var,
    Wff,
    is_core,
)
from app.services.abbrev import expand, fold
from app.services.substitution import free_vars
from app.services.syntax import infer_type, print_wff

logger = logging.getLogger(__name__)


class Graph:
    """A finite function given by its (argument, value) entries."""

    __slots__ = ("entries", "_table", "_hash")

    def __init__(self, entries: tuple[tuple["Value", "Value"], ...]) -> None:
        self.entries = entries
        self._table = dict(entries)
        self._hash = hash(entries)

    def apply(self, arg: "Value") -> "PartialValue":
        return self._table.get(arg)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Graph):
            return NotImplemented
        return self._hash == other._hash and self.entries == other.entries

    def __repr__(self) -> str:
        return f"Graph({render_value(self)})"


Value = str | bool | Graph
# None stands for "undefined"
PartialValue = Value | None
Assignment = Mapping[Var, Value]


def render_value(value: PartialValue) -> str:
    if value is None:
        return "undefined"
    if isinstance(value, bool):
        return "T" if value else "F"
    if isinstance(value, Graph):
        inner = ", ".join(f"{render_value(a)} -> {render_value(v)}" for a, v in value.entries)
        return "{" + inner + "}"
    return value


def default_labels(size: int) -> list[str]:
    if size <= len(string.ascii_lowercase):
        return list(string.ascii_lowercase[:size])
    return [f"d{i}" for i in range(1, size + 1)]


class Frame:
    """A standard frame over a finite set of individuals."""

    def __init__(self, base: Sequence[str], cap: int | None = None) -> None:
        if not base:
            raise ModelDefinitionError("The set of individuals must be nonempty")
        if len(set(base)) != len(base):
            duplicates = sorted({b for b in base if list(base).count(b) > 1})
            raise ModelDefinitionError(
                f"Duplicate individual labels: {', '.join(duplicates)}",
                details={"duplicates": duplicates},
            )
        self.base: tuple[str, ...] = tuple(base)
        self.cap = cap if cap is not None else settings.domain_size_cap
        self._base_set = frozenset(self.base)
        self._domains: dict[TypeSymbol, tuple[Value, ...]] = {}
        # Values of constant-free wffs, shared by every model over this frame
        self.cache: dict[Any, PartialValue] = {}

    def __repr__(self) -> str:
        return f"Frame(base={list(self.base)}, cap={self.cap})"

    def cardinality(self, t: TypeSymbol) -> int:
        match t:
            case Iota():
                return len(self.base)
            case Arrow(codomain=codomain, domain=domain):
                values = self.cardinality(codomain)
                if codomain != OMICRON:
                    values += 1
                return int(values ** self.cardinality(domain))
        return 2

    def domain(self, t: TypeSymbol) -> tuple[Value, ...]:
        cached = self._domains.get(t)
        if cached is not None:
            return cached
        size = self.cardinality(t)
        if size > self.cap:
            raise DomainSizeCapError(str(t), size, self.cap)
        elements: tuple[Value, ...]
        match t:
            case Iota():
                elements = self.base
            case Arrow(codomain=codomain, domain=dom):
                args = self.domain(dom)
                values: tuple[PartialValue, ...] = self.domain(codomain)
                if codomain != OMICRON:
                    values = (*values, None)
                elements = tuple(
                    Graph(tuple((a, v) for a, v in zip(args, combo, strict=True) if v is not None))
                    for combo in itertools.product(values, repeat=len(args))
                )
            case _:
                elements = (True, False)
        logger.debug("Domain enumerated", extra={"type": str(t), "size": len(elements)})
        self._domains[t] = elements
        return elements

    def contains(self, t: TypeSymbol, value: object) -> bool:
        match t:
            case Iota():
                return isinstance(value, str) and value in self._base_set
            case Arrow(codomain=codomain, domain=dom):
                if not isinstance(value, Graph):
                    return False
                args = [a for a, _ in value.entries]
                if len(set(args)) != len(args):
                    return False
                if not all(self.contains(dom, a) and self.contains(codomain, v) for a, v in value.entries):
                    return False
                return codomain != OMICRON or len(args) == self.cardinality(dom)
        return isinstance(value, bool)

    def graph(self, t: Arrow, mapping: Mapping[Value, Value]) -> Graph:
        """The canonical graph of type ``t`` with the given defined entries."""
        return Graph(tuple((a, mapping[a]) for a in self.domain(t.domain) if a in mapping))


class Model:
    """A frame together with values for its nonlogical constants."""

    def __init__(
        self, frame: Frame, interpretation: Mapping[Const, Value], *, validate: bool = True
    ) -> None:
        for const, value in interpretation.items() if validate else ():
            if const.kind != ConstKind.NONLOGICAL:
                raise ModelDefinitionError(f"{const.name} is a logical constant and is not stored")
            if not frame.contains(const.type, value):
                raise ModelDefinitionError(
                    f"Value {render_value(value)} is not in the domain of type {const.type} "
                    f"required by constant {const.name}",
                    details={"constant": const.name, "type": str(const.type)},
                )
        self.frame = frame
        self.interpretation: dict[Const, Value] = dict(interpretation)
        self.cache: dict[Any, PartialValue] = {}

    def __repr__(self) -> str:
        values = ", ".join(
            f"{c.name}={render_value(v)}" for c, v in sorted(self.interpretation.items(), key=lambda i: i[0].name)
        )
        return f"Model(base={list(self.frame.base)}, {values})"

    def describe(self) -> dict[str, object]:
        return {
            "base": list(self.frame.base),
            "constants": {c.name: render_value(v) for c, v in self.interpretation.items()},
        }


# --- Model construction ---


def value_from_term(frame: Frame, t: TypeSymbol, term: object, where: str) -> Value:
    """Read a model-file value term at type ``t``."""
    match t:
        case Iota():
            if isinstance(term, str) and frame.contains(t, term):
                return term
            raise ModelDefinitionError(f"{where}: {term!r} is not an individual of the base")
        case Arrow(codomain=codomain, domain=dom):
            entries = term.get("entries") if isinstance(term, dict) else None
            if not isinstance(entries, list):
                raise ModelDefinitionError(f"{where}: a value of type {t} must be a graph object")
            mapping: dict[Value, Value] = {}
            for index, entry in enumerate(entries):
                if not isinstance(entry, list | tuple) or len(entry) != 2:
                    raise ModelDefinitionError(f"{where}: entry {index} must be an [arg, value] pair")
                arg = value_from_term(frame, dom, entry[0], f"{where}[{index}].arg")
                if arg in mapping:
                    raise ModelDefinitionError(f"{where}: argument {render_value(arg)} listed twice")
                if entry[1] is None:
                    if codomain == OMICRON:
                        raise ModelDefinitionError(f"{where}: functions of type {t} must be total")
                    continue
                mapping[arg] = value_from_term(frame, codomain, entry[1], f"{where}[{index}].value")
            graph = frame.graph(t, mapping)
            if not frame.contains(t, graph):
                raise ModelDefinitionError(f"{where}: functions of type {t} must be total")
            return graph
    if isinstance(term, bool):
        return term
    if term in ("T", "F"):
        return term == "T"
    raise ModelDefinitionError(f"{where}: {term!r} is not a truth value (use \"T\" or \"F\")")


def build_model(
    base_labels: Sequence[str],
    constant_values: Mapping[Const, object],
    domain_size_cap: int | None = None,
) -> Model:
    """Build a model from model-file terms, one per nonlogical constant."""
    frame = Frame(base_labels, domain_size_cap)
    interpretation = {
        const: value_from_term(frame, const.type, term, const.name)
        for const, term in constant_values.items()
    }
    model = Model(frame, interpretation)
    logger.debug(
        "Model built",
        extra={"base_size": len(frame.base), "constants": len(interpretation), "cap": frame.cap},
    )
    return model


# --- Valuation ---


@lru_cache(maxsize=65536)
def _ordered_free_vars(wff: Wff) -> tuple[Var, ...]:
    return tuple(sorted(free_vars(wff), key=lambda v: (v.name, str(v.type))))


@lru_cache(maxsize=65536)
def nonlogical_constants(wff: Wff) -> frozenset[Const]:
    match wff:
        case Const(kind=ConstKind.NONLOGICAL):
            return frozenset({wff})
        case App(fun=fun, arg=arg):
            return nonlogical_constants(fun) | nonlogical_constants(arg)
        case Abs(body=body):
            return nonlogical_constants(body)
        case Abbrev(args=args):
            result: frozenset[Const] = frozenset()
            for arg in args:
                if isinstance(arg, Wff):
                    result |= nonlogical_constants(arg)
            return result
    return frozenset()


def _is_logical(wff: Wff, name: str) -> bool:
    return isinstance(wff, Const) and wff.kind == ConstKind.LOGICAL and wff.name == name


def _select_unique(predicate: PartialValue) -> PartialValue:
    if not isinstance(predicate, Graph):
        return None
    members = [arg for arg, value in predicate.entries if value is True]
    return members[0] if len(members) == 1 else None


_MISSING: Any = object()


class _Evaluator:
    def __init__(self, model: Model) -> None:
        self.model = model
        self.frame = model.frame

    def eval(self, wff: Wff, env: dict[Var, Value]) -> PartialValue:
        match wff:
            case Var():
                try:
                    return env[wff]
                except KeyError:
                    raise AssignmentError(str(wff)) from None
            case Const():
                return self._constant(wff)
            case App():
                return self._memoized(wff, env, self._application)
            case Abs():
                return self._memoized(wff, env, self._abstraction)
        raise NonCoreWffError(print_wff(wff))

    def _memoized(self, wff: App | Abs, env: dict[Var, Value], compute: Any) -> PartialValue:
        fvs = _ordered_free_vars(wff)
        if fvs and isinstance(wff, App):
            return compute(wff, env)  # type: ignore[no-any-return]
        cache = self.model.cache if nonlogical_constants(wff) else self.frame.cache
        key = (wff, tuple(env[v] for v in fvs)) if fvs else wff
        cached = cache.get(key, _MISSING)
        if cached is not _MISSING:
            return cached  # type: ignore[return-value]
        value: PartialValue = compute(wff, env)
        cache[key] = value
        return value

    def _constant(self, const: Const) -> PartialValue:
        if const.kind == ConstKind.NONLOGICAL:
            try:
                return self.model.interpretation[const]
            except KeyError:
                raise ModelDefinitionError(
                    f"The model gives no value to constant {const.name}",
                    details={"constant": const.name},
                ) from None
        return self._memoized_logical(const)

    def _memoized_logical(self, const: Const) -> Value:
        key = ("logical", const)
        cached = self.frame.cache.get(key)
        if cached is not None:
            return cached
        t = const.type
        assert isinstance(t, Arrow)
        value: Value
        if const.name == Q_NAME:
            alpha = t.domain
            elements = self.frame.domain(alpha)
            predicate_type = Arrow(OMICRON, alpha)
            value = Graph(
                tuple((d, self.frame.graph(predicate_type, {e: d == e for e in elements})) for d in elements)
            )
        else:
            predicates = self.frame.domain(t.domain)
            value = Graph(
                tuple(
                    (p, member)
                    for p in predicates
                    if (member := _select_unique(p)) is not None
                )
            )
        self.frame.cache[key] = value
        return value

    def _application(self, wff: App, env: dict[Var, Value]) -> PartialValue:
        fun, arg = wff.fun, wff.arg
        at_o = infer_type(wff) == OMICRON
        # [Q A] B: true iff both defined and identical
        if isinstance(fun, App) and _is_logical(fun.fun, Q_NAME):
            left = self.eval(fun.arg, env)
            right = self.eval(arg, env)
            return left is not None and right is not None and left == right
        if _is_logical(fun, Q_NAME):
            a = self.eval(arg, env)
            if a is None:
                return None
            t = infer_type(wff)
            assert isinstance(t, Arrow)
            return self.frame.graph(t, {e: e == a for e in self.frame.domain(t.domain)})
        if _is_logical(fun, IOTA_NAME):
            return _select_unique(self.eval(arg, env))
        f = self.eval(fun, env)
        a = self.eval(arg, env)
        if not isinstance(f, Graph) or a is None:
            return False if at_o else None
        value = f.apply(a)
        if value is None and at_o:
            return False
        return value

    def _abstraction(self, wff: Abs, env: dict[Var, Value]) -> PartialValue:
        binder, body = wff.binder, wff.body
        previous = env.get(binder, _MISSING)
        entries: list[tuple[Value, Value]] = []
        try:
            for d in self.frame.domain(binder.type):
                env[binder] = d
                value = self.eval(body, env)
                if value is not None:
                    entries.append((d, value))
        finally:
            if previous is _MISSING:
                del env[binder]
            else:
                env[binder] = previous
        return Graph(tuple(entries))


def valuate(model: Model, assignment: Assignment, wff: Wff) -> PartialValue:
    """V^M_φ(wff) for a core wff: a domain element, or None if undefined."""
    if not is_core(wff):
        raise NonCoreWffError(print_wff(wff))
    for var in _ordered_free_vars(wff):
        if var not in assignment:
            raise AssignmentError(str(var))
    env = {v: assignment[v] for v in _ordered_free_vars(wff)}
    return _Evaluator(model).eval(wff, env)


def assign(assignment: Assignment, var: Var, value: Value) -> dict[Var, Value]:
    """(φ : x/d): the assignment that agrees with φ except that x maps to d."""
    return {**assignment, var: value}


def assignments(frame: Frame, variables: Iterable[Var]) -> Iterator[dict[Var, Value]]:
    ordered = sorted(set(variables), key=lambda v: (v.name, str(v.type)))
    domains = [frame.domain(v.type) for v in ordered]
    for values in itertools.product(*domains):
        yield dict(zip(ordered, values, strict=True))


def _require_formula(wff: Wff) -> None:
    t = infer_type(wff)
    if t != OMICRON:
        raise TypeMismatchError(
            f"Validity is defined for wffs of type o, got type {t}", details={"type": str(t)}
        )


def falsifying_assignment(model: Model, wff: Wff) -> dict[Var, Value] | None:
    _require_formula(wff)
    evaluator = _Evaluator(model)
    for phi in assignments(model.frame, free_vars(wff)):
        if evaluator.eval(wff, phi) is not True:
            return phi
    return None


def is_valid_in_model(model: Model, wff: Wff) -> bool:
    """M ⊨ A: A evaluates to T under every assignment to its free variables."""
    if not is_core(wff):
        raise NonCoreWffError(print_wff(wff))
    return falsifying_assignment(model, wff) is None


def entails(model: Model, hypotheses: Sequence[Wff], wff: Wff, *, local: bool = True) -> bool:
    """Whether ``hypotheses`` entail ``wff`` in ``model``.

    Local entailment asks that every assignment satisfying all hypotheses
    satisfies ``wff``. Global entailment only asks that ``wff`` is valid in
    the model whenever every hypothesis is.
    """
    if not local:
        if all(is_valid_in_model(model, h) for h in hypotheses):
            return is_valid_in_model(model, wff)
        return True
    for h in (*hypotheses, wff):
        _require_formula(h)
    variables: set[Var] = set(free_vars(wff))
    for h in hypotheses:
        variables |= free_vars(h)
    evaluator = _Evaluator(model)
    for phi in assignments(model.frame, variables):
        if all(evaluator.eval(h, phi) is True for h in hypotheses) and evaluator.eval(wff, phi) is not True:
            return False
    return True


# --- Sweeps ---


def enumerate_models(frame: Frame, constants: Iterable[Const]) -> Iterator[Model]:
    """Every interpretation of ``constants`` over ``frame``."""
    ordered = sorted(set(constants), key=lambda c: (c.name, str(c.type)))
    domains = [frame.domain(c.type) for c in ordered]
    for values in itertools.product(*domains):
        yield Model(frame, dict(zip(ordered, values, strict=True)), validate=False)


@dataclass(frozen=True)
class CounterModel:
    model: Model
    assignment: dict[Var, Value]

    def describe(self) -> dict[str, object]:
        return self.model.describe() | {
            "assignment": {str(v): render_value(d) for v, d in self.assignment.items()}
        }


def find_counter_model(
    wff: Wff,
    max_base: int,
    *,
    extra_constants: Iterable[Const] = (),
    cap: int | None = None,
) -> CounterModel | None:
    """Search standard models with 1..max_base individuals for one falsifying ``wff``."""
    core = expand(wff)
    _require_formula(core)
    constants = nonlogical_constants(core) | frozenset(extra_constants)
    checked = 0
    for size in range(1, max_base + 1):
        frame = Frame(default_labels(size), cap)
        for model in enumerate_models(frame, constants):
            checked += 1
            phi = falsifying_assignment(model, core)
            if phi is not None:
                logger.warning(
                    "Counter-model found",
                    extra={"base_size": size, "models_checked": checked, "wff": print_wff(wff)},
                )
                return CounterModel(model, phi)
    logger.info(
        "Valid up to bound", extra={"max_base": max_base, "models_checked": checked}
    )
    return None


# --- Definedness report ---


@dataclass(frozen=True)
class ProfileEntry:
    text: str
    type: str
    value: str

    @property
    def defined(self) -> bool:
        return self.value != "undefined"


_BINDING_ABBREVS = {
    AbbrevName.FORALL,
    AbbrevName.EXISTS,
    AbbrevName.EXISTS_UNIQUE,
    AbbrevName.DEFINITE_DESCRIPTION,
}


def definedness_profile(model: Model, assignment: Assignment, wff: Wff) -> list[ProfileEntry]:
    """Value of every subwff outside the scope of a binder, outermost first."""
    entries: list[ProfileEntry] = []
    seen: set[Wff] = set()
    evaluator = _Evaluator(model)

    def visit(node: Wff) -> None:
        if node in seen:
            return
        seen.add(node)
        core = expand(node)
        if all(v in assignment for v in free_vars(core)):
            env = {v: assignment[v] for v in free_vars(core)}
            value = evaluator.eval(core, env)
            entries.append(ProfileEntry(print_wff(node), str(infer_type(node)), render_value(value)))
        match node:
            case App(fun=fun, arg=arg):
                visit(fun)
                visit(arg)
            case Abbrev(name=name, args=args) if name not in _BINDING_ABBREVS:
                for arg in args:
                    if isinstance(arg, Wff):
                        visit(arg)

    visit(fold(expand(wff)))
    return entries
