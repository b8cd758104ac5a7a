"""
Type inference and the canonical printer.

Type inference follows the formation rules: [A_αβ B_β] is a wff_α and
[λx_β B_α] is a wff_αβ. Folded abbreviation nodes are typed by the rule they
abbreviate, so a surface wff and its expansion always agree on type.

The printer emits the surface grammar accepted by ``app.services.parser``.
Precedence, loosest first: binders, ``=>`` (right associative), ``\\/``,
``/\\`` (both left associative), ``= /= ~=`` (non-associative), ``~``,
application (left associative), atoms. Grouping uses square brackets.
"""

from functools import lru_cache

from app.core.exceptions import AbbreviationArgumentError, TypeMismatchError
from app.models.signature import Signature
from app.models.types import OMICRON, Arrow, TypeSymbol, arrow, is_atomic
from app.models.wff import IOTA_NAME, Q_NAME, Abbrev, AbbrevName, Abs, App, Const, Var, Wff

__all__ = [
    "ABBREV_ARITY",
    "Signature",
    "infer_type",
    "is_closed",
    "print_type",
    "print_wff",
    "type_suffix",
]

OOO = arrow(OMICRON, OMICRON, OMICRON)
OO = arrow(OMICRON, OMICRON)

ABBREV_ARITY: dict[AbbrevName, int] = {
    AbbrevName.EQUALS: 2,
    AbbrevName.TRUE: 0,
    AbbrevName.FALSE: 0,
    AbbrevName.FORALL: 2,
    AbbrevName.AND_CONST: 0,
    AbbrevName.AND: 2,
    AbbrevName.IMPLIES_CONST: 0,
    AbbrevName.IMPLIES: 2,
    AbbrevName.NOT_CONST: 0,
    AbbrevName.NOT: 1,
    AbbrevName.OR_CONST: 0,
    AbbrevName.OR: 2,
    AbbrevName.EXISTS: 2,
    AbbrevName.EXISTS_UNIQUE: 2,
    AbbrevName.NOT_EQUALS: 2,
    AbbrevName.IS_DEFINED: 1,
    AbbrevName.IS_UNDEFINED: 1,
    AbbrevName.QUASI_EQUALS: 2,
    AbbrevName.DEFINITE_DESCRIPTION: 2,
    AbbrevName.BOTTOM: 1,
}

_BINDERS = {
    AbbrevName.FORALL,
    AbbrevName.EXISTS,
    AbbrevName.EXISTS_UNIQUE,
    AbbrevName.DEFINITE_DESCRIPTION,
}


# --- Types ---


def print_type(t: TypeSymbol) -> str:
    return str(t)


def type_suffix(t: TypeSymbol) -> str:
    """The text after ``_`` in ``x_i`` or ``f_(oi)``."""
    return str(t) if is_atomic(t) else f"({t})"


@lru_cache(maxsize=65536)
def infer_type(wff: Wff) -> TypeSymbol:
    match wff:
        case Var(type=t) | Const(type=t):
            return t
        case App(fun=fun, arg=arg):
            fun_type = infer_type(fun)
            arg_type = infer_type(arg)
            if not isinstance(fun_type, Arrow):
                raise TypeMismatchError(
                    f"{print_wff(fun)} has type {fun_type} and cannot be applied",
                    details={"function": print_wff(fun), "type": str(fun_type)},
                )
            if fun_type.domain != arg_type:
                raise TypeMismatchError(
                    f"{print_wff(fun)} expects an argument of type {fun_type.domain}, "
                    f"got {print_wff(arg)} of type {arg_type}",
                    details={"expected": str(fun_type.domain), "actual": str(arg_type)},
                )
            return fun_type.codomain
        case Abs(binder=binder, body=body):
            return Arrow(infer_type(body), binder.type)
        case Abbrev():
            return _abbrev_type(wff)
    raise TypeMismatchError(f"Not a wff: {wff!r}")


def _abbrev_type(wff: Abbrev) -> TypeSymbol:
    name, args = wff.name, wff.args
    if len(args) != ABBREV_ARITY[name]:
        raise AbbreviationArgumentError(
            f"{name.value} takes {ABBREV_ARITY[name]} argument(s), got {len(args)}",
            details={"abbreviation": name.value, "arity": len(args)},
        )
    match name:
        case AbbrevName.TRUE | AbbrevName.FALSE:
            return OMICRON
        case AbbrevName.AND_CONST | AbbrevName.OR_CONST | AbbrevName.IMPLIES_CONST:
            return OOO
        case AbbrevName.NOT_CONST:
            return OO
        case AbbrevName.NOT:
            _expect_formula(name, _wff_arg(name, args[0]))
            return OMICRON
        case AbbrevName.AND | AbbrevName.OR | AbbrevName.IMPLIES:
            _expect_formula(name, _wff_arg(name, args[0]))
            _expect_formula(name, _wff_arg(name, args[1]))
            return OMICRON
        case AbbrevName.EQUALS | AbbrevName.NOT_EQUALS | AbbrevName.QUASI_EQUALS:
            left = infer_type(_wff_arg(name, args[0]))
            right = infer_type(_wff_arg(name, args[1]))
            if left != right:
                raise TypeMismatchError(
                    f"{name.value} relates wffs of types {left} and {right}",
                    details={"left": str(left), "right": str(right)},
                )
            return OMICRON
        case AbbrevName.IS_DEFINED | AbbrevName.IS_UNDEFINED:
            infer_type(_wff_arg(name, args[0]))
            return OMICRON
        case AbbrevName.FORALL | AbbrevName.EXISTS | AbbrevName.EXISTS_UNIQUE:
            _binder_arg(name, args[0])
            _expect_formula(name, _wff_arg(name, args[1]))
            return OMICRON
        case AbbrevName.DEFINITE_DESCRIPTION:
            binder = _binder_arg(name, args[0])
            if binder.type == OMICRON:
                raise AbbreviationArgumentError(
                    "definite description is not available at type o",
                    details={"abbreviation": name.value},
                )
            _expect_formula(name, _wff_arg(name, args[1]))
            return binder.type
        case AbbrevName.BOTTOM:
            t = args[0]
            if not isinstance(t, TypeSymbol):
                raise AbbreviationArgumentError("Bottom takes a type symbol")
            if t == OMICRON:
                raise AbbreviationArgumentError(
                    "bot is not defined at type o", details={"abbreviation": name.value}
                )
            return t
    raise AbbreviationArgumentError(f"Unknown abbreviation {name!r}")


def _wff_arg(name: AbbrevName, arg: object) -> Wff:
    if not isinstance(arg, Wff):
        raise AbbreviationArgumentError(
            f"{name.value} expects a wff argument, got {arg}",
            details={"abbreviation": name.value},
        )
    return arg


def _binder_arg(name: AbbrevName, arg: object) -> Var:
    if not isinstance(arg, Var):
        raise AbbreviationArgumentError(
            f"{name.value} binds a variable, got {arg}",
            details={"abbreviation": name.value},
        )
    return arg


def _expect_formula(name: AbbrevName, wff: Wff) -> None:
    t = infer_type(wff)
    if t != OMICRON:
        raise TypeMismatchError(
            f"{name.value} expects a wff of type o, got {print_wff(wff)} of type {t}",
            details={"abbreviation": name.value, "actual": str(t)},
        )


def is_closed(wff: Wff) -> bool:
    return _is_closed(wff, frozenset())


def _is_closed(wff: Wff, bound: frozenset[Var]) -> bool:
    match wff:
        case Var():
            return wff in bound
        case Const():
            return True
        case App(fun=fun, arg=arg):
            return _is_closed(fun, bound) and _is_closed(arg, bound)
        case Abs(binder=binder, body=body):
            return _is_closed(body, bound | {binder})
        case Abbrev(name=name, args=args):
            if name in _BINDERS:
                assert isinstance(args[0], Var)
                return _is_closed(args[1], bound | {args[0]})  # type: ignore[arg-type]
            return all(
                _is_closed(a, bound) for a in args if isinstance(a, Wff)
            )
    return True


# --- Printer ---

_BINDER, _IMPLIES, _OR, _AND, _EQ, _NOT, _APP, _ATOM = range(8)

_BINARY: dict[AbbrevName, tuple[str, int, int, int]] = {
    # name: (token, own level, left operand level, right operand level)
    AbbrevName.IMPLIES: ("=>", _IMPLIES, _OR, _IMPLIES),
    AbbrevName.OR: ("\\/", _OR, _OR, _AND),
    AbbrevName.AND: ("/\\", _AND, _AND, _EQ),
    AbbrevName.EQUALS: ("=", _EQ, _NOT, _NOT),
    AbbrevName.NOT_EQUALS: ("/=", _EQ, _NOT, _NOT),
    AbbrevName.QUASI_EQUALS: ("~=", _EQ, _NOT, _NOT),
}

_BINDER_KEYWORDS = {
    AbbrevName.FORALL: "forall ",
    AbbrevName.EXISTS: "exists ",
    AbbrevName.EXISTS_UNIQUE: "exists1 ",
    AbbrevName.DEFINITE_DESCRIPTION: "I ",
}

_CONSTANT_TOKENS = {
    AbbrevName.TRUE: "T",
    AbbrevName.FALSE: "F",
    AbbrevName.AND_CONST: "(/\\)",
    AbbrevName.OR_CONST: "(\\/)",
    AbbrevName.IMPLIES_CONST: "(=>)",
    AbbrevName.NOT_CONST: "(~)",
}


def print_wff(wff: Wff) -> str:
    text, _ = _print(wff)
    return text


def _bracketed(wff: Wff, min_level: int) -> str:
    text, level = _print(wff)
    return f"[{text}]" if level < min_level else text


def _print(wff: Wff) -> tuple[str, int]:
    match wff:
        case Var():
            return str(wff), _ATOM
        case Const(name=name, type=t):
            if name == Q_NAME and isinstance(t, Arrow):
                return f"Q_{type_suffix(t.domain)}", _ATOM
            if name == IOTA_NAME and isinstance(t, Arrow):
                return f"iota_{type_suffix(t.codomain)}", _ATOM
            return name, _ATOM
        case App(fun=fun, arg=arg):
            return f"{_bracketed(fun, _APP)} {_bracketed(arg, _ATOM)}", _APP
        case Abs(binder=binder, body=body):
            return f"\\{binder}. {_bracketed(body, _BINDER)}", _BINDER
        case Abbrev(name=name, args=args):
            return _print_abbrev(name, args)
    return repr(wff), _ATOM


def _print_abbrev(name: AbbrevName, args: tuple[object, ...]) -> tuple[str, int]:
    if name in _CONSTANT_TOKENS:
        return _CONSTANT_TOKENS[name], _ATOM
    if name in _BINARY:
        token, level, left_level, right_level = _BINARY[name]
        left = _bracketed(args[0], left_level)  # type: ignore[arg-type]
        right = _bracketed(args[1], right_level)  # type: ignore[arg-type]
        return f"{left} {token} {right}", level
    if name in _BINDER_KEYWORDS:
        body = _bracketed(args[1], _BINDER)  # type: ignore[arg-type]
        return f"{_BINDER_KEYWORDS[name]}{args[0]}. {body}", _BINDER
    match name:
        case AbbrevName.NOT:
            return f"~{_bracketed(args[0], _NOT)}", _NOT  # type: ignore[arg-type]
        case AbbrevName.IS_DEFINED:
            return f"def({print_wff(args[0])})", _ATOM  # type: ignore[arg-type]
        case AbbrevName.IS_UNDEFINED:
            return f"undef({print_wff(args[0])})", _ATOM  # type: ignore[arg-type]
        case AbbrevName.BOTTOM:
            return f"bot_{type_suffix(args[0])}", _ATOM  # type: ignore[arg-type]
    raise AbbreviationArgumentError(f"Unknown abbreviation {name!r}")
