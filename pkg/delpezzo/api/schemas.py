"""
Pydantic schemas for report documents.
"""

from typing import List, Optional

from pydantic import BaseModel, Field, model_validator


# === Building blocks ===

class TagModel(BaseModel):
    """A structural tag."""
    kind: str
    params: List[int] = Field(default_factory=list)
    label: str
    description: str


class VerdictModel(BaseModel):
    """Positivity verdict; rationals are written as "p/q" strings."""
    mu: int
    nef_threshold: str = Field(..., description='1/mu, or "inf" when mu <= 0')
    verdict: Optional[str] = None
    adjoint_self_intersection_at_half: str


class FormEntry(BaseModel):
    """One canonical form of a cell with its own tag and verdict."""
    form: str
    representative: List[int]
    orbit_size: int = Field(..., ge=1)
    tag: TagModel
    verdict: VerdictModel


# === Report ===

class TableRow(BaseModel):
    """One (d, m, n) cell."""
    d: int = Field(..., ge=1, le=7)
    m: int = Field(..., ge=1)
    n: int = Field(..., ge=-1)
    forms: List[str]
    family_count: int = Field(..., ge=0)
    tag: TagModel
    verdict: Optional[VerdictModel] = None
    families: List[FormEntry] = Field(default_factory=list)

    @model_validator(mode="after")
    def forms_match_tag(self) -> "TableRow":
        if bool(self.forms) == (self.tag.kind == "NoCurve"):
            raise ValueError("forms must be non-empty exactly when the tag is not NoCurve")
        return self


class ReportDocument(BaseModel):
    """Full table for a set of degrees, rows ordered by (d, m, n)."""
    tool_version: str
    degrees: List[int]
    rows: List[TableRow]
    discrepancy_notes: List[str] = Field(default_factory=list)
    family_notes: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def rows_sorted(self) -> "ReportDocument":
        keys = [(r.d, r.m, r.n) for r in self.rows]
        if keys != sorted(keys):
            raise ValueError("rows must be ordered by (d, m, n)")
        return self
