"""
Tautology service: the propositional skeleton of a wff of type o.

The skeleton is read off ``fold(expand(W))``: T, F, ``~``, ``/\\``, ``\\/``,
``=>`` and ``=`` between wffs of type o are connectives, and ``/=``,
``undef``, ``~=`` and ``exists`` contribute the connectives of their own
expansions. Every other maximal subwff is an atom; two atoms are the same
iff their core forms are identical. Treating ``=`` at type o as material
equivalence is recorded on the skeleton so reports can flag it.
"""

import itertools
import logging
from collections.abc import Callable
from dataclasses import dataclass, field

from app.models.types import OMICRON
from app.models.wff import Abbrev, AbbrevName, Wff
from app.services.abbrev import expand, fold
from app.services.syntax import infer_type

logger = logging.getLogger(__name__)

Formula = Callable[[dict[Wff, bool]], bool]


@dataclass
class Skeleton:
    formula: Formula
    atoms: list[Wff] = field(default_factory=list)
    uses_equivalence: bool = False


def skeleton(wff: Wff) -> Skeleton:
    builder = _SkeletonBuilder()
    formula = builder.build(fold(expand(wff)))
    return Skeleton(formula, builder.atoms, builder.uses_equivalence)


class _SkeletonBuilder:
    def __init__(self) -> None:
        self.atoms: list[Wff] = []
        self._seen: set[Wff] = set()
        self.uses_equivalence = False

    def build(self, wff: Wff) -> Formula:
        if isinstance(wff, Abbrev):
            formula = self._connective(wff)
            if formula is not None:
                return formula
        return self._atom(wff)

    def _atom(self, wff: Wff) -> Formula:
        key = expand(wff)
        if key not in self._seen:
            self._seen.add(key)
            self.atoms.append(key)
        return lambda row: row[key]

    def _connective(self, wff: Abbrev) -> Formula | None:
        args = wff.args
        match wff.name:
            case AbbrevName.TRUE:
                return lambda row: True
            case AbbrevName.FALSE:
                return lambda row: False
            case AbbrevName.NOT:
                inner = self.build(args[0])  # type: ignore[arg-type]
                return lambda row: not inner(row)
            case AbbrevName.AND | AbbrevName.OR | AbbrevName.IMPLIES:
                left = self.build(args[0])  # type: ignore[arg-type]
                right = self.build(args[1])  # type: ignore[arg-type]
                if wff.name == AbbrevName.AND:
                    return lambda row: left(row) and right(row)
                if wff.name == AbbrevName.OR:
                    return lambda row: left(row) or right(row)
                return lambda row: (not left(row)) or right(row)
            case AbbrevName.EQUALS | AbbrevName.NOT_EQUALS:
                if infer_type(args[0]) != OMICRON:  # type: ignore[arg-type]
                    if wff.name == AbbrevName.NOT_EQUALS:
                        inner = self._atom(Abbrev(AbbrevName.EQUALS, args))
                        return lambda row: not inner(row)
                    return None
                self.uses_equivalence = True
                left = self.build(args[0])  # type: ignore[arg-type]
                right = self.build(args[1])  # type: ignore[arg-type]
                if wff.name == AbbrevName.EQUALS:
                    return lambda row: left(row) == right(row)
                return lambda row: left(row) != right(row)
            case AbbrevName.IS_UNDEFINED:
                inner = self._atom(Abbrev(AbbrevName.IS_DEFINED, args))
                return lambda row: not inner(row)
            case AbbrevName.QUASI_EQUALS:
                a, b = args
                unfolded = Abbrev(
                    AbbrevName.IMPLIES,
                    (
                        Abbrev(
                            AbbrevName.OR,
                            (Abbrev(AbbrevName.IS_DEFINED, (a,)), Abbrev(AbbrevName.IS_DEFINED, (b,))),
                        ),
                        Abbrev(AbbrevName.EQUALS, (a, b)),
                    ),
                )
                return self.build(unfolded)
            case AbbrevName.EXISTS:
                x, body = args
                inner = self._atom(
                    Abbrev(AbbrevName.FORALL, (x, Abbrev(AbbrevName.NOT, (body,))))  # type: ignore[arg-type]
                )
                return lambda row: not inner(row)
        return None


def truth_table(sk: Skeleton) -> list[tuple[dict[Wff, bool], bool]]:
    rows: list[tuple[dict[Wff, bool], bool]] = []
    for values in itertools.product((True, False), repeat=len(sk.atoms)):
        row = dict(zip(sk.atoms, values, strict=True))
        rows.append((row, sk.formula(row)))
    return rows


def tautologous(wff: Wff) -> bool:
    """True iff the skeleton of ``wff`` is true under every truth assignment to its atoms."""
    sk = skeleton(wff)
    result = all(value for _, value in truth_table(sk))
    logger.debug(
        "Tautology check",
        extra={"atoms": len(sk.atoms), "tautologous": result, "equivalence": sk.uses_equivalence},
    )
    return result
