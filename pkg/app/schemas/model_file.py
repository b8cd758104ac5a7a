"""The model description file: individuals, constant values and a size cap."""

from pydantic import BaseModel, ConfigDict, Field, field_validator


class GraphTerm(BaseModel):
    """A function value: ``[arg, value]`` pairs, ``null`` where it is undefined."""

    model_config = ConfigDict(extra="forbid")

    entries: list[tuple["ValueTerm", "ValueTerm | None"]] = Field(default_factory=list)


# An individual label, "T"/"F", a boolean, or a graph
ValueTerm = bool | str | GraphTerm

GraphTerm.model_rebuild()


class ConstantEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    type: str = Field(..., min_length=1, description="Type symbol, e.g. 'oi'")
    value: ValueTerm


class ModelFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    base: list[str] = Field(..., min_length=1, description="Labels of the individuals")
    constants: dict[str, ConstantEntry] = Field(default_factory=dict)
    cap: int | None = Field(None, ge=1, description="Domain size cap for this model")

    @field_validator("base")
    @classmethod
    def labels_are_distinct(cls, base: list[str]) -> list[str]:
        duplicates = sorted({label for label in base if base.count(label) > 1})
        if duplicates:
            raise ValueError(f"duplicate individual labels: {', '.join(duplicates)}")
        return base

    def term(self, name: str) -> object:
        """The value term of ``name`` as plain JSON data, for the semantics layer."""
        return _plain(self.constants[name].value)


def _plain(term: object) -> object:
    if isinstance(term, GraphTerm):
        return {"entries": [[_plain(arg), _plain(val)] for arg, val in term.entries]}
    return term
