"""Signatures: the declared nonlogical constants of a theory."""

import re
from dataclasses import dataclass, field

from app.core.exceptions import SignatureError, UnknownConstantError
from app.models.types import TypeSymbol

# Base names of the variable lexicon; a variable name is a base optionally
# followed by a positive superscript, e.g. x^1
VARIABLE_BASES = ("x", "y", "z", "f", "g", "h")

# Keywords and logical-constant heads of the surface grammar
RESERVED_NAMES = frozenset(
    {"T", "F", "Q", "iota", "bot", "def", "undef", "forall", "exists", "exists1", "I"}
)

_VARIABLE_RE = re.compile(r"[fghxyz](\^[1-9][0-9]*)?")
_CONSTANT_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*")


def is_variable_name(name: str) -> bool:
    return _VARIABLE_RE.fullmatch(name) is not None


@dataclass(frozen=True)
class Signature:
    """Nonlogical constants by name.

    Q and iota are implicitly present at every admissible type and are never
    stored here.
    """

    constants: dict[str, TypeSymbol] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name in self.constants:
            _check_constant_name(name)

    def declare(self, name: str, type_: TypeSymbol) -> "Signature":
        if name in self.constants:
            raise SignatureError(f"Constant {name!r} is already declared", details={"name": name})
        return Signature({**self.constants, name: type_})

    def lookup(self, name: str) -> TypeSymbol:
        try:
            return self.constants[name]
        except KeyError:
            raise UnknownConstantError(name) from None

    def __contains__(self, name: object) -> bool:
        return name in self.constants


def _check_constant_name(name: str) -> None:
    if name in RESERVED_NAMES:
        raise SignatureError(f"{name!r} is reserved by the surface grammar", details={"name": name})
    if is_variable_name(name):
        raise SignatureError(
            f"{name!r} belongs to the variable lexicon and cannot name a constant",
            details={"name": name},
        )
    if _CONSTANT_RE.fullmatch(name) is None:
        raise SignatureError(f"{name!r} is not a valid constant name", details={"name": name})
