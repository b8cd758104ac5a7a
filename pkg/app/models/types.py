"""Type symbols: ı, o and (αβ), the type of functions from β to α."""

from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class Iota:
    def __str__(self) -> str:
        return "i"


@dataclass(frozen=True, slots=True)
class Omicron:
    def __str__(self) -> str:
        return "o"


@dataclass(frozen=True, slots=True)
class Arrow:
    codomain: "TypeSymbol"
    domain: "TypeSymbol"

    def __str__(self) -> str:
        # ((αβ)γ) prints as αβγ: only a compound domain needs parentheses
        dom = str(self.domain)
        if isinstance(self.domain, Arrow):
            dom = f"({dom})"
        return f"{self.codomain}{dom}"


TypeSymbol = Iota | Omicron | Arrow

IOTA = Iota()
OMICRON = Omicron()


def arrow(codomain: TypeSymbol, *domains: TypeSymbol) -> TypeSymbol:
    """Build αβγ... with left association: arrow(o, a, a) is the type oαα."""
    result = codomain
    for domain in domains:
        result = Arrow(result, domain)
    return result


def is_atomic(t: TypeSymbol) -> bool:
    return not isinstance(t, Arrow)
