from typing import Dict, List

from pydantic import BaseModel, ConfigDict, Field


class CriterionResult(BaseModel):
    """Outcome of one acceptance criterion, with the quantities it measured."""
    model_config = ConfigDict(frozen=True)

    identifier: str = Field(..., description="Registry key, e.g. 'kernel_symmetry'.")
    description: str
    measured: Dict[str, float] = Field(default_factory=dict)
    threshold: Dict[str, float] = Field(default_factory=dict)
    passed: bool
    runtime_seconds: float = Field(ge=0)
    error: str = Field("", description="Message of the exception that stopped the criterion, if any.")


class SuiteReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    results: List[CriterionResult]

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failed(self) -> List[str]:
        return [result.identifier for result in self.results if not result.passed]
