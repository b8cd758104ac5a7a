"""
Wffs of the object language.

Core nodes are variables, constants, applications and abstractions. ``Abbrev``
is the folded surface form of a definitional abbreviation; it exists only in
the surface layer and is removed by ``app.services.abbrev.expand``.

Equality is strict structural identity (names, types, shape). Hashes are
cached because kernel checking compares and indexes large expanded trees.
"""

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Any

from app.models.types import OMICRON, Arrow, TypeSymbol, arrow


class ConstKind(str, enum.Enum):
    LOGICAL = "logical"
    NONLOGICAL = "nonlogical"


class AbbrevName(str, enum.Enum):
    EQUALS = "Equals"
    TRUE = "True"
    FALSE = "False"
    FORALL = "Forall"
    AND_CONST = "AndConst"
    AND = "And"
    IMPLIES_CONST = "ImpliesConst"
    IMPLIES = "Implies"
    NOT_CONST = "NotConst"
    NOT = "Not"
    OR_CONST = "OrConst"
    OR = "Or"
    EXISTS = "Exists"
    EXISTS_UNIQUE = "ExistsUnique"
    NOT_EQUALS = "NotEquals"
    IS_DEFINED = "IsDefined"
    IS_UNDEFINED = "IsUndefined"
    QUASI_EQUALS = "QuasiEquals"
    DEFINITE_DESCRIPTION = "DefiniteDescription"
    BOTTOM = "Bottom"


class _Node:
    def _key(self) -> tuple[Any, ...]:
        raise NotImplementedError

    @cached_property
    def _hash(self) -> int:
        return hash((type(self).__name__, *self._key()))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if type(other) is not type(self):
            return False
        assert isinstance(other, _Node)
        return self._hash == other._hash and self._key() == other._key()


@dataclass(frozen=True, eq=False)
class Var(_Node):
    name: str
    type: TypeSymbol

    def _key(self) -> tuple[Any, ...]:
        return (self.name, self.type)

    def __str__(self) -> str:
        t = str(self.type)
        return f"{self.name}_{t}" if len(t) == 1 else f"{self.name}_({t})"


@dataclass(frozen=True, eq=False)
class Const(_Node):
    name: str
    type: TypeSymbol
    kind: ConstKind = ConstKind.NONLOGICAL

    def _key(self) -> tuple[Any, ...]:
        return (self.name, self.type, self.kind)


@dataclass(frozen=True, eq=False)
class App(_Node):
    fun: "Wff"
    arg: "Wff"

    def _key(self) -> tuple[Any, ...]:
        return (self.fun, self.arg)


@dataclass(frozen=True, eq=False)
class Abs(_Node):
    binder: Var
    body: "Wff"

    def _key(self) -> tuple[Any, ...]:
        return (self.binder, self.body)


@dataclass(frozen=True, eq=False)
class Abbrev(_Node):
    """A folded abbreviation: its name and its arguments (wffs, binders or types)."""

    name: AbbrevName
    args: tuple["Wff | TypeSymbol", ...] = ()

    def _key(self) -> tuple[Any, ...]:
        return (self.name, self.args)


Wff = Var | Const | App | Abs | Abbrev
CoreWff = Var | Const | App | Abs

Q_NAME = "Q"
IOTA_NAME = "iota"


def q_const(alpha: TypeSymbol) -> Const:
    """Q_(oαα), the equality constant at type α."""
    return Const(Q_NAME, arrow(OMICRON, alpha, alpha), ConstKind.LOGICAL)


def iota_const(alpha: TypeSymbol) -> Const:
    """ι_(α(oα)), the definite description operator at type α ≠ o."""
    return Const(IOTA_NAME, Arrow(alpha, Arrow(OMICRON, alpha)), ConstKind.LOGICAL)


def apply(fun: Wff, *args: Wff) -> Wff:
    """Left-associated application: apply(C, A, B) is [[C A] B]."""
    result = fun
    for arg in args:
        result = App(result, arg)
    return result


def is_core(wff: Wff) -> bool:
    match wff:
        case Abbrev():
            return False
        case App(fun=fun, arg=arg):
            return is_core(fun) and is_core(arg)
        case Abs(body=body):
            return is_core(body)
        case _:
            return True
