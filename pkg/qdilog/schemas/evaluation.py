"""
Evaluation schemas for the eval and integral commands.

All numbers are decimal strings at the requested precision.
"""

from typing import Dict, Optional

from pydantic import BaseModel, Field


class EvaluationResponse(BaseModel):
    """Value of one library function."""
    function: str = Field(..., description="Function name")
    params: Dict[str, str] = Field(default_factory=dict, description="Parameters as given on the command line")
    value_re: str = Field(..., description="Real part")
    value_im: str = Field(..., description="Imaginary part")
    digits: int = Field(..., description="Reported precision in decimal digits", ge=15)
    terms_used: Optional[int] = Field(None, description="Series terms summed, when a series was summed")

    class Config:
        json_schema_extra = {
            "example": {
                "function": "li2q",
                "params": {"z": "0.25", "q": "0.5"},
                "value_re": "0.5489149...",
                "value_im": "0.0",
                "digits": 50,
                "terms_used": 83
            }
        }


class IntegralResponse(BaseModel):
    """Barnes integral along a vertical line."""
    which: str = Field(..., description="li2, ci2 or si2")
    params: Dict[str, str] = Field(default_factory=dict, description="x, zparam, theta and c")
    value_re: str = Field(..., description="Real part")
    value_im: str = Field(..., description="Imaginary part")
    nodes_used: int = Field(..., description="Distinct quadrature nodes evaluated", ge=1)
    estimate: str = Field(..., description="Self-consistency estimate: last level change or tail contribution")
    height: str = Field(..., description="Final truncation height T")
    step: str = Field(..., description="Final node spacing h")
    digits: int = Field(..., description="Reported precision in decimal digits", ge=15)
