"""
Verification report schemas.

A report passes iff every case passes. Residuals and tolerances are decimal
strings so serialization never goes through binary floats.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field, computed_field


class VerificationCase(BaseModel):
    """One identity check."""
    case_id: str = Field(..., description="Stable identifier, used for ordering")
    inputs: Dict[str, str] = Field(default_factory=dict, description="Inputs of the check")
    residual: str = Field(..., description="Measured residual")
    tolerance: str = Field(..., description="Tolerance the residual is held to")
    passed: bool = Field(..., description="Whether the residual is within tolerance")
    variant: Optional[str] = Field(None, description="Formula variant confirmed by this case")
    note: Optional[str] = Field(None, description="Additional detail, e.g. residuals of refuted variants")


class VerificationReport(BaseModel):
    """Outcome of a verification suite."""
    suite: str = Field(..., description="Suite name")
    digits: int = Field(..., description="Reported precision in decimal digits", ge=15)
    cases: List[VerificationCase] = Field(default_factory=list, description="Cases ordered by case_id")
    confirmed_variant: Optional[str] = Field(
        None,
        description="Closed-form variants confirmed by the adjudication cases"
    )
    findings: List[str] = Field(default_factory=list, description="Discrepancies reported without failing the suite")

    @computed_field
    @property
    def passed(self) -> bool:
        return all(case.passed for case in self.cases)

    class Config:
        json_schema_extra = {
            "example": {
                "suite": "kirillov",
                "digits": 50,
                "cases": [
                    {
                        "case_id": "kirillov-000",
                        "inputs": {"q": "0.5", "z": "0.25"},
                        "residual": "3.1e-58",
                        "tolerance": "1.0e-40",
                        "passed": True
                    }
                ],
                "confirmed_variant": None,
                "findings": [],
                "passed": True
            }
        }
