"""
Substitution service: free variables, the free-for condition, S^x_A B,
fresh variables and occurrence paths.

Capture is never repaired by renaming: ``substitute`` raises ``CaptureError``
whenever the free-for condition fails.
"""

from collections.abc import Iterator
from functools import lru_cache
from itertools import count

from app.core.exceptions import CaptureError, NonCoreWffError, RuleApplicationError, TypeMismatchError
from app.models.proof import OccurrencePath, PathStep
from app.models.signature import VARIABLE_BASES
from app.models.types import TypeSymbol
from app.models.wff import Abbrev, AbbrevName, Abs, App, Const, Var, Wff, is_core
from app.services.syntax import infer_type, print_wff

_BINDING_ABBREVS = {
    AbbrevName.FORALL,
    AbbrevName.EXISTS,
    AbbrevName.EXISTS_UNIQUE,
    AbbrevName.DEFINITE_DESCRIPTION,
}


@lru_cache(maxsize=65536)
def free_vars(wff: Wff) -> frozenset[Var]:
    match wff:
        case Var():
            return frozenset({wff})
        case Const():
            return frozenset()
        case App(fun=fun, arg=arg):
            return free_vars(fun) | free_vars(arg)
        case Abs(binder=binder, body=body):
            return free_vars(body) - {binder}
        case Abbrev(name=name, args=args):
            # Every variable an expansion introduces is bound in it
            if name in _BINDING_ABBREVS:
                binder, body = args
                assert isinstance(binder, Var) and isinstance(body, Wff)
                return free_vars(body) - {binder}
            result: frozenset[Var] = frozenset()
            for arg in args:
                if isinstance(arg, Wff):
                    result |= free_vars(arg)
            return result
    return frozenset()


@lru_cache(maxsize=65536)
def vars_occurring(wff: Wff) -> frozenset[Var]:
    """Every variable occurring in a core wff, free, bound or as a binder."""
    match wff:
        case Var():
            return frozenset({wff})
        case Const():
            return frozenset()
        case App(fun=fun, arg=arg):
            return vars_occurring(fun) | vars_occurring(arg)
        case Abs(binder=binder, body=body):
            return vars_occurring(body) | {binder}
    raise NonCoreWffError(str(wff))


def is_free_for(a: Wff, x: Var, b: Wff) -> bool:
    """Folded abbreviations in ``a`` or ``b`` are judged on their expansions."""
    a, b = _core(a), _core(b)
    _check_same_type(a, x)
    return _capturing_binder(a, x, b) is None


def substitute(a: Wff, x: Var, b: Wff) -> Wff:
    """S^x_A B: replace every free occurrence of ``x`` in ``b`` by ``a``.

    The result is a core wff; folded abbreviations are expanded first.
    """
    a, b = _core(a), _core(b)
    _check_same_type(a, x)
    binder = _capturing_binder(a, x, b)
    if binder is not None:
        raise CaptureError(print_wff(a), str(x), str(binder))
    return _substitute(a, x, b)


def _core(wff: Wff) -> Wff:
    if is_core(wff):
        return wff
    from app.services.abbrev import expand  # abbrev imports this module

    return expand(wff)


def _check_same_type(a: Wff, x: Var) -> None:
    a_type = infer_type(a)
    if a_type != x.type:
        raise TypeMismatchError(
            f"Cannot substitute {print_wff(a)} of type {a_type} for {x}",
            details={"replacement": print_wff(a), "variable": str(x)},
        )


def _capturing_binder(a: Wff, x: Var, b: Wff) -> Var | None:
    match b:
        case Var() | Const():
            return None
        case App(fun=fun, arg=arg):
            return _capturing_binder(a, x, fun) or _capturing_binder(a, x, arg)
        case Abs(binder=binder, body=body):
            if binder == x or x not in free_vars(body):
                return None
            if binder in free_vars(a):
                return binder
            return _capturing_binder(a, x, body)
    raise NonCoreWffError(str(b))


def _substitute(a: Wff, x: Var, b: Wff) -> Wff:
    if x not in free_vars(b):
        return b
    match b:
        case Var():
            return a
        case App(fun=fun, arg=arg):
            return App(_substitute(a, x, fun), _substitute(a, x, arg))
        case Abs(binder=binder, body=body):
            return Abs(binder, _substitute(a, x, body))
    return b


def variable_names() -> Iterator[str]:
    """x, y, z, f, g, h, x^1, y^1, ..., h^1, x^2, ..."""
    for n in count():
        for base in VARIABLE_BASES:
            yield base if n == 0 else f"{base}^{n}"


def fresh_variable(type_: TypeSymbol, avoid: frozenset[Var] | set[Var]) -> Var:
    for name in variable_names():
        candidate = Var(name, type_)
        if candidate not in avoid:
            return candidate
    raise AssertionError("variable enumeration is unbounded")


# --- Occurrences ---


def subtree_at(wff: Wff, path: OccurrencePath) -> Wff:
    node = wff
    for depth, step in enumerate(path):
        match node, step:
            case App(fun=fun), PathStep.FUN:
                node = fun
            case App(arg=arg), PathStep.ARG:
                node = arg
            case Abs(body=body), PathStep.BODY:
                node = body
            case _:
                raise RuleApplicationError(
                    "path",
                    f"step {depth + 1} ({step.value}) does not address a subtree",
                    details={"path": [s.value for s in path]},
                )
    return node


def replace_at(wff: Wff, path: OccurrencePath, replacement: Wff) -> Wff:
    if not path:
        return replacement
    step, rest = path[0], path[1:]
    match wff, step:
        case App(fun=fun, arg=arg), PathStep.FUN:
            return App(replace_at(fun, rest, replacement), arg)
        case App(fun=fun, arg=arg), PathStep.ARG:
            return App(fun, replace_at(arg, rest, replacement))
        case Abs(binder=binder, body=body), PathStep.BODY:
            return Abs(binder, replace_at(body, rest, replacement))
    raise RuleApplicationError(
        "path", f"{step.value} does not address a subtree", details={"path": [s.value for s in path]}
    )


def binders_above(wff: Wff, path: OccurrencePath) -> list[Var]:
    """Binders of the abstractions whose body contains the addressed occurrence."""
    binders: list[Var] = []
    node = wff
    for step in path:
        if isinstance(node, Abs) and step == PathStep.BODY:
            binders.append(node.binder)
        node = subtree_at(node, (step,))
    return binders


def find_occurrences(target: Wff, sub: Wff) -> list[OccurrencePath]:
    """All non-binder occurrences of ``sub`` in a core wff, in preorder."""
    found: list[OccurrencePath] = []
    size = _size(sub)

    def walk(node: Wff, path: OccurrencePath) -> None:
        if node == sub:
            found.append(path)
            return
        if _size(node) <= size:
            return
        match node:
            case App(fun=fun, arg=arg):
                walk(fun, (*path, PathStep.FUN))
                walk(arg, (*path, PathStep.ARG))
            case Abs(body=body):
                walk(body, (*path, PathStep.BODY))

    walk(target, ())
    return found


@lru_cache(maxsize=65536)
def _size(wff: Wff) -> int:
    match wff:
        case App(fun=fun, arg=arg):
            return 1 + _size(fun) + _size(arg)
        case Abs(body=body):
            return 1 + _size(body)
    return 1
