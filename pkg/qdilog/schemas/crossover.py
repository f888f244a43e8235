"""
Crossover schema: direct summation against the optimally truncated expansion.
"""

from pydantic import BaseModel, Field

CROSSOVER_COLUMNS = ["x", "direct_terms", "direct_time", "asymp_N", "asymp_error", "direct_error"]


class CrossoverRow(BaseModel):
    """Cost and accuracy of both evaluation routes at one x."""
    x: str = Field(..., description="Sample point x = -log q")
    direct_terms: int = Field(..., description="Terms of the q-dilogarithm series summed", ge=0)
    direct_time: str = Field(..., description="Wall-clock seconds spent on direct summation")
    asymp_N: int = Field(..., description="Optimal truncation order of the q -> 1 expansion", ge=1)
    asymp_error: str = Field(..., description="|expansion - reference|")
    direct_error: str = Field(..., description="|direct sum - reference|")
