from pydantic import BaseModel, Field

from app.services.soundness import SuiteResult


class FailureReport(BaseModel):
    label: str
    detail: str


class SectionReport(BaseModel):
    name: str
    checked: int = Field(..., ge=0)
    failed: int = Field(..., ge=0)
    passed: bool
    # Only the first failures are kept; ``failed`` has the full count
    failures: list[FailureReport] = Field(default_factory=list)


class SoundnessReport(BaseModel):
    passed: bool
    mutation: str | None = None
    iota_bases: list[int] = Field(default_factory=list)
    sections: list[SectionReport] = Field(default_factory=list)

    @classmethod
    def from_result(
        cls, result: SuiteResult, iota_bases: list[int], max_failures: int = 10
    ) -> "SoundnessReport":
        return cls(
            passed=result.passed,
            mutation=result.mutation,
            iota_bases=iota_bases,
            sections=[
                SectionReport(
                    name=section.name,
                    checked=section.checked,
                    failed=len(section.failures),
                    passed=section.passed,
                    failures=[
                        FailureReport(label=f.label, detail=f.detail)
                        for f in section.failures[:max_failures]
                    ],
                )
                for section in result.sections
            ],
        )
