"""
Abbreviation service: the definitional layer.

``expand`` rewrites folded abbreviation nodes outside-in until only variables,
constants, applications and abstractions remain. Where a rule needs a fresh
variable (def and exists1) it is chosen against the variables occurring in
the core form of the operand, so a wff and its expansion always pick the
same variable.

``fold`` is the inverse used for display. Each candidate it proposes is
accepted only if re-expanding it reproduces the core subtree exactly, hence
``expand(fold(W)) == W`` for every core W.

The ``match_*`` helpers recognise the core shape of an abbreviation and
return its operands; the kernel uses them to read quasi-equalities and
implications off expanded wffs.
"""

from functools import lru_cache

from app.core.exceptions import AbbreviationArgumentError, Q0uError
from app.models.types import OMICRON, Arrow, TypeSymbol
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
    apply,
    iota_const,
    q_const,
)
from app.services.substitution import fresh_variable, vars_occurring
from app.services.syntax import infer_type

__all__ = [
    "AbbrevName",
    "expand",
    "fold",
    "make_abbrev",
    "match_equals",
    "match_forall",
    "match_implies",
    "match_is_defined",
    "match_not",
    "match_quasi_equality",
]


def make_abbrev(name: AbbrevName, *args: Wff | TypeSymbol) -> Abbrev:
    """Build a folded abbreviation node, checking arity and operand types."""
    node = Abbrev(name, tuple(args))
    infer_type(node)
    return node


# Shorthands used to state the rewrite rules
def _eq(a: Wff, b: Wff) -> Wff:
    return Abbrev(AbbrevName.EQUALS, (a, b))


def _not(a: Wff) -> Wff:
    return Abbrev(AbbrevName.NOT, (a,))


def _and(a: Wff, b: Wff) -> Wff:
    return Abbrev(AbbrevName.AND, (a, b))


def _or(a: Wff, b: Wff) -> Wff:
    return Abbrev(AbbrevName.OR, (a, b))


def _implies(a: Wff, b: Wff) -> Wff:
    return Abbrev(AbbrevName.IMPLIES, (a, b))


def _forall(x: Var, a: Wff) -> Wff:
    return Abbrev(AbbrevName.FORALL, (x, a))


def _exists(x: Var, a: Wff) -> Wff:
    return Abbrev(AbbrevName.EXISTS, (x, a))


def _defined(a: Wff) -> Wff:
    return Abbrev(AbbrevName.IS_DEFINED, (a,))


TRUE = Abbrev(AbbrevName.TRUE)
FALSE = Abbrev(AbbrevName.FALSE)

_X_O = Var("x", OMICRON)
_Y_O = Var("y", OMICRON)
_G_OOO = Var("g", Arrow(Arrow(OMICRON, OMICRON), OMICRON))


def _unfold(node: Abbrev) -> Wff:
    """One rewrite step: the right-hand side of the rule for ``node``."""
    infer_type(node)
    args = node.args
    match node.name:
        case AbbrevName.EQUALS:
            a, b = args
            assert isinstance(a, Wff) and isinstance(b, Wff)
            return apply(q_const(infer_type(a)), a, b)
        case AbbrevName.TRUE:
            q_ooo = q_const(OMICRON)
            return _eq(q_ooo, q_ooo)
        case AbbrevName.FALSE:
            return _eq(Abs(_X_O, TRUE), Abs(_X_O, _X_O))
        case AbbrevName.FORALL:
            x, a = args
            assert isinstance(x, Var) and isinstance(a, Wff)
            return _eq(Abs(Var("y", x.type), TRUE), Abs(x, a))
        case AbbrevName.AND_CONST:
            return Abs(
                _X_O,
                Abs(
                    _Y_O,
                    _eq(Abs(_G_OOO, apply(_G_OOO, TRUE, TRUE)), Abs(_G_OOO, apply(_G_OOO, _X_O, _Y_O))),
                ),
            )
        case AbbrevName.IMPLIES_CONST:
            return Abs(_X_O, Abs(_Y_O, _eq(_X_O, _and(_X_O, _Y_O))))
        case AbbrevName.NOT_CONST:
            return App(q_const(OMICRON), FALSE)
        case AbbrevName.OR_CONST:
            return Abs(_X_O, Abs(_Y_O, _not(_and(_not(_X_O), _not(_Y_O)))))
        case AbbrevName.AND | AbbrevName.OR | AbbrevName.IMPLIES:
            constant = {
                AbbrevName.AND: AbbrevName.AND_CONST,
                AbbrevName.OR: AbbrevName.OR_CONST,
                AbbrevName.IMPLIES: AbbrevName.IMPLIES_CONST,
            }[node.name]
            a, b = args
            assert isinstance(a, Wff) and isinstance(b, Wff)
            return apply(Abbrev(constant), a, b)
        case AbbrevName.NOT:
            (a,) = args
            assert isinstance(a, Wff)
            return App(Abbrev(AbbrevName.NOT_CONST), a)
        case AbbrevName.EXISTS:
            x, a = args
            assert isinstance(x, Var) and isinstance(a, Wff)
            return _not(_forall(x, _not(a)))
        case AbbrevName.EXISTS_UNIQUE:
            x, a = args
            assert isinstance(x, Var) and isinstance(a, Wff)
            y = fresh_variable(x.type, vars_occurring(expand(a)) | {x})
            return _exists(y, _eq(Abs(x, a), App(q_const(x.type), y)))
        case AbbrevName.NOT_EQUALS:
            a, b = args
            assert isinstance(a, Wff) and isinstance(b, Wff)
            return _not(_eq(a, b))
        case AbbrevName.IS_DEFINED:
            (a,) = args
            assert isinstance(a, Wff)
            x = fresh_variable(infer_type(a), vars_occurring(expand(a)))
            return _exists(x, _eq(x, a))
        case AbbrevName.IS_UNDEFINED:
            (a,) = args
            assert isinstance(a, Wff)
            return _not(_defined(a))
        case AbbrevName.QUASI_EQUALS:
            a, b = args
            assert isinstance(a, Wff) and isinstance(b, Wff)
            return _implies(_or(_defined(a), _defined(b)), _eq(a, b))
        case AbbrevName.DEFINITE_DESCRIPTION:
            x, a = args
            assert isinstance(x, Var) and isinstance(a, Wff)
            return App(iota_const(x.type), Abs(x, a))
        case AbbrevName.BOTTOM:
            (alpha,) = args
            assert not isinstance(alpha, Wff)
            x = Var("x", alpha)
            return Abbrev(
                AbbrevName.DEFINITE_DESCRIPTION, (x, Abbrev(AbbrevName.NOT_EQUALS, (x, x)))
            )
    raise AbbreviationArgumentError(f"Unknown abbreviation {node.name!r}")


@lru_cache(maxsize=65536)
def expand(wff: Wff) -> Wff:
    """The core wff an abbreviated wff stands for."""
    match wff:
        case Var() | Const():
            return wff
        case App(fun=fun, arg=arg):
            new_fun, new_arg = expand(fun), expand(arg)
            if new_fun is fun and new_arg is arg:
                return wff
            return App(new_fun, new_arg)
        case Abs(binder=binder, body=body):
            new_body = expand(body)
            return wff if new_body is body else Abs(binder, new_body)
        case Abbrev():
            return expand(_unfold(wff))
    return wff


# --- Core-shape matchers ---


def _core(name: AbbrevName) -> Wff:
    return expand(Abbrev(name))


def _binary_operands(wff: Wff, constant: Wff) -> tuple[Wff, Wff] | None:
    if isinstance(wff, App) and isinstance(wff.fun, App) and wff.fun.fun == constant:
        return wff.fun.arg, wff.arg
    return None


def match_equals(wff: Wff) -> tuple[Wff, Wff] | None:
    if (
        isinstance(wff, App)
        and isinstance(wff.fun, App)
        and isinstance(wff.fun.fun, Const)
        and wff.fun.fun.kind == ConstKind.LOGICAL
        and wff.fun.fun.name == Q_NAME
    ):
        return wff.fun.arg, wff.arg
    return None


def match_implies(wff: Wff) -> tuple[Wff, Wff] | None:
    return _binary_operands(wff, _core(AbbrevName.IMPLIES_CONST))


def match_and(wff: Wff) -> tuple[Wff, Wff] | None:
    return _binary_operands(wff, _core(AbbrevName.AND_CONST))


def match_or(wff: Wff) -> tuple[Wff, Wff] | None:
    return _binary_operands(wff, _core(AbbrevName.OR_CONST))


def match_not(wff: Wff) -> Wff | None:
    if isinstance(wff, App) and wff.fun == _core(AbbrevName.NOT_CONST):
        return wff.arg
    return None


def match_forall(wff: Wff) -> tuple[Var, Wff] | None:
    operands = match_equals(wff)
    if operands is None:
        return None
    left, right = operands
    if (
        isinstance(left, Abs)
        and isinstance(right, Abs)
        and left.binder == Var("y", right.binder.type)
        and left.body == _core(AbbrevName.TRUE)
    ):
        return right.binder, right.body
    return None


def match_exists(wff: Wff) -> tuple[Var, Wff] | None:
    negated = match_not(wff)
    quantified = match_forall(negated) if negated is not None else None
    if quantified is None:
        return None
    body = match_not(quantified[1])
    return (quantified[0], body) if body is not None else None


def _verified(name: AbbrevName, args: tuple[Wff | TypeSymbol, ...], wff: Wff) -> bool:
    try:
        return expand(Abbrev(name, args)) == wff
    except Q0uError:
        return False


def match_is_defined(wff: Wff) -> Wff | None:
    quantified = match_exists(wff)
    if quantified is None:
        return None
    operands = match_equals(quantified[1])
    if operands is None or operands[0] != quantified[0]:
        return None
    return operands[1] if _verified(AbbrevName.IS_DEFINED, (operands[1],), wff) else None


def match_quasi_equality(wff: Wff) -> tuple[Wff, Wff] | None:
    implication = match_implies(wff)
    if implication is None:
        return None
    operands = match_equals(implication[1])
    if operands is None:
        return None
    return operands if _verified(AbbrevName.QUASI_EQUALS, operands, wff) else None


# --- Folding ---


def _fold_candidates(wff: Wff) -> list[tuple[AbbrevName, tuple[Wff | TypeSymbol, ...]]]:
    candidates: list[tuple[AbbrevName, tuple[Wff | TypeSymbol, ...]]] = []

    if isinstance(wff, App) and isinstance(wff.fun, Const) and wff.fun.name == IOTA_NAME:
        if isinstance(wff.arg, Abs):
            x, body = wff.arg.binder, wff.arg.body
            candidates.append((AbbrevName.BOTTOM, (x.type,)))
            candidates.append((AbbrevName.DEFINITE_DESCRIPTION, (x, body)))
        return candidates

    negated = match_not(wff)
    if negated is not None:
        defined = match_is_defined(negated)
        if defined is not None:
            candidates.append((AbbrevName.IS_UNDEFINED, (defined,)))
        quantified = match_exists(wff)
        if quantified is not None:
            x, body = quantified
            operands = match_equals(body)
            if operands is not None:
                left, right = operands
                if left == x:
                    candidates.append((AbbrevName.IS_DEFINED, (right,)))
                if isinstance(left, Abs):
                    candidates.append((AbbrevName.EXISTS_UNIQUE, (left.binder, left.body)))
            candidates.append((AbbrevName.EXISTS, (x, body)))
        operands = match_equals(negated)
        if operands is not None:
            candidates.append((AbbrevName.NOT_EQUALS, operands))
        candidates.append((AbbrevName.NOT, (negated,)))
        return candidates

    for matcher, name in (
        (match_implies, AbbrevName.IMPLIES),
        (match_or, AbbrevName.OR),
        (match_and, AbbrevName.AND),
    ):
        operands = matcher(wff)
        if operands is not None:
            if name == AbbrevName.IMPLIES:
                quasi = match_quasi_equality(wff)
                if quasi is not None:
                    candidates.append((AbbrevName.QUASI_EQUALS, quasi))
            candidates.append((name, operands))
            return candidates

    quantified = match_forall(wff)
    if quantified is not None:
        candidates.append((AbbrevName.FORALL, quantified))
    operands = match_equals(wff)
    if operands is not None:
        candidates.append((AbbrevName.EQUALS, operands))
    return candidates


_CLOSED_NAMES = (
    AbbrevName.TRUE,
    AbbrevName.FALSE,
    AbbrevName.AND_CONST,
    AbbrevName.OR_CONST,
    AbbrevName.IMPLIES_CONST,
    AbbrevName.NOT_CONST,
)


@lru_cache(maxsize=1)
def _closed_table() -> dict[Wff, Wff]:
    return {expand(Abbrev(name)): Abbrev(name) for name in _CLOSED_NAMES}


@lru_cache(maxsize=65536)
def fold(wff: Wff) -> Wff:
    """Best-effort surface form of a core wff; ``expand(fold(W)) == W``."""
    if isinstance(wff, Abbrev):
        return wff
    table = _closed_table()
    if wff in table:
        return table[wff]
    for name, args in _fold_candidates(wff):
        if _verified(name, args, wff):
            return Abbrev(name, tuple(fold(a) if isinstance(a, Wff) else a for a in args))
    match wff:
        case App(fun=fun, arg=arg):
            return App(fold(fun), fold(arg))
        case Abs(binder=binder, body=body):
            return Abs(binder, fold(body))
    return wff

