"""
Parser service: type symbols and the surface wff grammar.

    wff     ::= binder | implies
    binder  ::= ("\\" | "forall" | "exists" | "exists1" | "I") VAR "." wff
    implies ::= or ("=>" implies)?
    or      ::= and ("\\/" and)*
    and     ::= eq ("/\\" eq)*
    eq      ::= unary (("=" | "/=" | "~=") unary)?
    unary   ::= "~" unary | app
    app     ::= atom atom*
    atom    ::= VAR | CONST | "T" | "F" | "bot_t" | "Q_t" | "iota_t"
              | "def(" wff ")" | "undef(" wff ")" | "[" wff "]" | "(" wff ")"
              | "(/\\)" | "(\\/)" | "(=>)" | "(~)"

Variables are ``x``, ``y``, ``z``, ``f``, ``g``, ``h`` with an optional
superscript (``x^1``) and a type suffix (``x_i``, ``f_(oi)``). A bound
occurrence may omit its suffix; it then refers to the innermost binder of that
name. Abbreviations stay folded; ``app.services.abbrev.expand`` unfolds them.
"""

import re
from dataclasses import dataclass
from typing import NoReturn

from app.core.exceptions import (
    Q0uError,
    SignatureError,
    TypeMismatchError,
    TypeSyntaxError,
    WffSyntaxError,
)
from app.models.signature import RESERVED_NAMES, Signature, is_variable_name
from app.models.types import IOTA, OMICRON, Arrow, TypeSymbol
from app.models.wff import Abbrev, AbbrevName, Abs, App, Const, Var, Wff, iota_const, q_const
from app.services.syntax import infer_type

# --- Types ---


def parse_type(text: str) -> TypeSymbol:
    """Parse a type symbol; an unparenthesized sequence associates to the left."""
    stripped = "".join(text.split())
    if not stripped:
        raise TypeSyntaxError(text, "empty type symbol")
    result, end = _parse_type_sequence(stripped, 0, text)
    if end != len(stripped):
        raise TypeSyntaxError(text, f"unexpected {stripped[end]!r}")
    return result


def _parse_type_sequence(s: str, pos: int, text: str) -> tuple[TypeSymbol, int]:
    items: list[TypeSymbol] = []
    while pos < len(s) and s[pos] != ")":
        ch = s[pos]
        if ch == "i":
            items.append(IOTA)
            pos += 1
        elif ch == "o":
            items.append(OMICRON)
            pos += 1
        elif ch == "(":
            inner, pos = _parse_type_sequence(s, pos + 1, text)
            if pos >= len(s) or s[pos] != ")":
                raise TypeSyntaxError(text, "unbalanced parentheses")
            items.append(inner)
            pos += 1
        else:
            raise TypeSyntaxError(text, f"unexpected {ch!r}")
    if not items:
        raise TypeSyntaxError(text, "empty type symbol")
    result = items[0]
    for domain in items[1:]:
        result = Arrow(result, domain)
    return result, pos


# --- Lexer ---


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int
    type: TypeSymbol | None = None


_OPERATORS = [
    ("(/\\)", "AND_CONST"),
    ("(\\/)", "OR_CONST"),
    ("(=>)", "IMPLIES_CONST"),
    ("(~)", "NOT_CONST"),
    ("=>", "IMPLIES"),
    ("\\/", "OR"),
    ("/\\", "AND"),
    ("/=", "NEQ"),
    ("~=", "QEQ"),
    ("=", "EQ"),
    ("~", "NOT"),
    ("\\", "LAMBDA"),
    (".", "DOT"),
    ("[", "LBRACK"),
    ("]", "RBRACK"),
    ("(", "LPAREN"),
    (")", "RPAREN"),
]

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*(\^[0-9]+)?")

_KEYWORDS = {
    "forall": "FORALL",
    "exists": "EXISTS",
    "exists1": "EXISTS1",
    "I": "IOTA_BINDER",
    "def": "DEF",
    "undef": "UNDEF",
    "T": "TRUE",
    "F": "FALSE",
}


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        for literal, kind in _OPERATORS:
            if text.startswith(literal, pos):
                tokens.append(Token(kind, literal, pos))
                pos += len(literal)
                break
        else:
            match = _NAME_RE.match(text, pos)
            if match is None:
                raise WffSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
            name = match.group(0)
            end = match.end()
            type_: TypeSymbol | None = None
            if end < len(text) and text[end] == "_":
                type_text, end = _scan_type_suffix(text, end + 1)
                try:
                    type_ = parse_type(type_text)
                except TypeSyntaxError as exc:
                    raise WffSyntaxError(exc.message, match.end() + 1, text) from exc
            tokens.append(Token(_name_kind(name, type_), name, pos, type_))
            pos = end
    tokens.append(Token("EOF", "", len(text)))
    return tokens


def _scan_type_suffix(text: str, pos: int) -> tuple[str, int]:
    start = pos
    if pos < len(text) and text[pos] == "(":
        depth = 0
        while pos < len(text):
            if text[pos] == "(":
                depth += 1
            elif text[pos] == ")":
                depth -= 1
                if depth == 0:
                    return text[start : pos + 1], pos + 1
            pos += 1
        raise WffSyntaxError("unbalanced parentheses in type suffix", start, text)
    while pos < len(text) and text[pos] in "io":
        pos += 1
    if pos == start:
        raise WffSyntaxError("missing type after '_'", start, text)
    return text[start:pos], pos


def _name_kind(name: str, type_: TypeSymbol | None) -> str:
    if type_ is None and name in _KEYWORDS:
        return _KEYWORDS[name]
    if name in ("Q", "iota", "bot"):
        return name.upper()
    if is_variable_name(name):
        return "VAR"
    return "CONST"


# --- Parser ---

_ATOM_START = {
    "VAR",
    "CONST",
    "TRUE",
    "FALSE",
    "Q",
    "IOTA",
    "BOT",
    "DEF",
    "UNDEF",
    "LBRACK",
    "LPAREN",
    "AND_CONST",
    "OR_CONST",
    "IMPLIES_CONST",
    "NOT_CONST",
}

_BINDER_KINDS = {
    "LAMBDA": None,
    "FORALL": AbbrevName.FORALL,
    "EXISTS": AbbrevName.EXISTS,
    "EXISTS1": AbbrevName.EXISTS_UNIQUE,
    "IOTA_BINDER": AbbrevName.DEFINITE_DESCRIPTION,
}

_EQUALITY_KINDS = {
    "EQ": AbbrevName.EQUALS,
    "NEQ": AbbrevName.NOT_EQUALS,
    "QEQ": AbbrevName.QUASI_EQUALS,
}

_CONNECTIVE_CONSTANTS = {
    "AND_CONST": AbbrevName.AND_CONST,
    "OR_CONST": AbbrevName.OR_CONST,
    "IMPLIES_CONST": AbbrevName.IMPLIES_CONST,
    "NOT_CONST": AbbrevName.NOT_CONST,
}


class _Parser:
    def __init__(self, text: str, signature: Signature) -> None:
        self._text = text
        self._signature = signature
        self._tokens = tokenize(text)
        self._index = 0
        self._scope: list[Var] = []

    # token stream

    @property
    def _current(self) -> Token:
        return self._tokens[self._index]

    def _advance(self) -> Token:
        token = self._tokens[self._index]
        self._index += 1
        return token

    def _expect(self, kind: str, what: str) -> Token:
        if self._current.kind != kind:
            self._fail(f"expected {what}")
        return self._advance()

    def _fail(self, reason: str, token: Token | None = None) -> NoReturn:
        token = token or self._current
        found = "end of input" if token.kind == "EOF" else repr(token.text)
        raise WffSyntaxError(f"{reason}, found {found}", token.pos, self._text)

    # grammar

    def parse(self) -> Wff:
        wff = self._wff()
        if self._current.kind != "EOF":
            self._fail("unexpected trailing input")
        return wff

    def _wff(self) -> Wff:
        if self._current.kind in _BINDER_KINDS:
            return self._binder()
        return self._implies()

    def _binder(self) -> Wff:
        head = self._advance()
        token = self._expect("VAR", "a variable after the binder")
        if token.type is None:
            self._fail("a bound variable needs a type suffix", token)
        binder = Var(token.text, token.type)
        self._expect("DOT", "'.' after the bound variable")
        self._scope.append(binder)
        try:
            body = self._wff()
        finally:
            self._scope.pop()
        name = _BINDER_KINDS[head.kind]
        if name is None:
            return Abs(binder, body)
        return self._abbrev(name, (binder, body), head)

    def _implies(self) -> Wff:
        left = self._or()
        if self._current.kind == "IMPLIES":
            op = self._advance()
            right = self._implies()
            return self._abbrev(AbbrevName.IMPLIES, (left, right), op)
        return left

    def _or(self) -> Wff:
        left = self._and()
        while self._current.kind == "OR":
            op = self._advance()
            left = self._abbrev(AbbrevName.OR, (left, self._and()), op)
        return left

    def _and(self) -> Wff:
        left = self._eq()
        while self._current.kind == "AND":
            op = self._advance()
            left = self._abbrev(AbbrevName.AND, (left, self._eq()), op)
        return left

    def _eq(self) -> Wff:
        left = self._unary()
        if self._current.kind in _EQUALITY_KINDS:
            op = self._advance()
            right = self._unary()
            result = self._abbrev(_EQUALITY_KINDS[op.kind], (left, right), op)
            if self._current.kind in _EQUALITY_KINDS:
                self._fail("equality operators do not associate; use brackets")
            return result
        return left

    def _unary(self) -> Wff:
        if self._current.kind == "NOT":
            op = self._advance()
            return self._abbrev(AbbrevName.NOT, (self._unary(),), op)
        return self._app()

    def _app(self) -> Wff:
        start = self._current
        result = self._atom()
        while self._current.kind in _ATOM_START:
            arg = self._atom()
            result = App(result, arg)
            self._check(result, start)
        return result

    def _atom(self) -> Wff:
        token = self._current
        kind = token.kind
        if kind == "VAR":
            self._advance()
            return self._variable(token)
        if kind == "CONST":
            self._advance()
            return self._constant(token)
        if kind in ("TRUE", "FALSE"):
            self._advance()
            name = AbbrevName.TRUE if kind == "TRUE" else AbbrevName.FALSE
            return Abbrev(name)
        if kind in _CONNECTIVE_CONSTANTS:
            self._advance()
            return Abbrev(_CONNECTIVE_CONSTANTS[kind])
        if kind in ("Q", "IOTA", "BOT"):
            self._advance()
            return self._logical(token)
        if kind in ("DEF", "UNDEF"):
            self._advance()
            self._expect("LPAREN", "'(' after def/undef")
            operand = self._wff()
            self._expect("RPAREN", "')'")
            name = AbbrevName.IS_DEFINED if kind == "DEF" else AbbrevName.IS_UNDEFINED
            return self._abbrev(name, (operand,), token)
        if kind in ("LBRACK", "LPAREN"):
            self._advance()
            inner = self._wff()
            self._expect("RBRACK" if kind == "LBRACK" else "RPAREN", "a closing bracket")
            return inner
        self._fail("expected a wff")

    def _variable(self, token: Token) -> Var:
        if token.type is not None:
            return Var(token.text, token.type)
        for binder in reversed(self._scope):
            if binder.name == token.text:
                return binder
        self._fail(f"free variable {token.text!r} needs a type suffix", token)

    def _constant(self, token: Token) -> Const:
        if token.text in RESERVED_NAMES:
            self._fail(f"{token.text!r} is reserved", token)
        try:
            declared = self._signature.lookup(token.text)
        except Q0uError as exc:
            exc.details = {"name": token.text, "position": token.pos}
            raise
        if token.type is not None and token.type != declared:
            raise TypeMismatchError(
                f"Constant {token.text!r} is declared with type {declared}, "
                f"annotated {token.type}",
                details={"name": token.text, "position": token.pos},
            )
        return Const(token.text, declared)

    def _logical(self, token: Token) -> Wff:
        if token.type is None:
            self._fail(f"{token.text} needs a type suffix", token)
        if token.kind == "Q":
            return q_const(token.type)
        if token.kind == "IOTA":
            if token.type == OMICRON:
                raise SignatureError(
                    "iota is not a primitive constant at type o(oo)",
                    details={"position": token.pos},
                )
            return iota_const(token.type)
        return self._abbrev(AbbrevName.BOTTOM, (token.type,), token)

    def _abbrev(self, name: AbbrevName, args: tuple[Wff | TypeSymbol, ...], at: Token) -> Wff:
        wff = Abbrev(name, args)
        self._check(wff, at)
        return wff

    def _check(self, wff: Wff, at: Token) -> None:
        try:
            infer_type(wff)
        except Q0uError as exc:
            details = exc.details if isinstance(exc.details, dict) else {}
            exc.details = details | {"position": at.pos}
            raise


def parse_wff(text: str, signature: Signature | None = None) -> Wff:
    """Parse surface text into a typed wff; abbreviations remain folded."""
    return _Parser(text, signature or Signature()).parse()

