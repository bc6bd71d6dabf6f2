"""
Result Schemas

Output models for valuation checks and CLI commands.
"""

from typing import Any

from pydantic import BaseModel, Field


class ValuationReport(BaseModel):
    """
    Outcome of checking one invariant on one relation.

    ``passed`` holds exactly when the alternating sum
    f(P) - sum c_i f(P_i) is zero.
    """

    invariant: str = Field(..., description="Registered invariant name")
    relation: str = Field(..., description="Name of the checked relation")
    alternating_sum: Any = Field(..., description="f(P) - sum c_i f(P_i), JSON-encoded")
    passed: bool = Field(..., description="Whether the alternating sum is exactly zero")
    strong_passed: bool | None = Field(
        default=None, description="Whether the indicator relation itself holds, when checked"
    )


class PointwiseReport(BaseModel):
    """Pointwise evaluation of an indicator relation at sampled rational points."""

    relation: str = Field(..., description="Name of the checked relation")
    samples: int = Field(..., ge=0, description="Number of points evaluated")
    failures: list[dict[str, str]] = Field(
        default_factory=list, description="Points where the indicator sum is nonzero"
    )

    @property
    def passed(self) -> bool:
        return not self.failures


class CommandOutput(BaseModel):
    """The JSON document printed by every CLI verb."""

    verb: str = Field(..., description="The verb that ran")
    result: Any = Field(..., description="JSON-encoded result")
    assumptions: dict[str, str] = Field(default_factory=dict, description="Conventions in force")
    passed: bool | None = Field(default=None, description="Pass/fail for checking verbs")


class SubdivisionReport(BaseModel):
    """Every check run against one relation."""

    relation: str = Field(..., description="Name of the checked relation")
    problems: list[str] = Field(default_factory=list, description="Validation findings")
    strong_passed: bool = Field(..., description="Whether the canonical form of the relation vanishes")
    reports: list[ValuationReport] = Field(default_factory=list, description="One weak check per invariant")
    pointwise: PointwiseReport = Field(..., description="Pointwise evaluation at sampled points")

    @property
    def passed(self) -> bool:
        return self.strong_passed and self.pointwise.passed and all(r.passed for r in self.reports)

    def summary(self) -> dict[str, Any]:
        data = self.model_dump()
        data["pointwise"]["passed"] = self.pointwise.passed
        data["passed"] = self.passed
        return data
