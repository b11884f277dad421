"""Pydantic models for Golodness reports."""

from __future__ import annotations

from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field

VerdictKind = Literal["non_golod", "golod_certified", "golod_evidence_up_to"]


class BettiEntry(BaseModel):
    homological_degree: int
    internal_degree: int
    rank: int


class PoincareSummary(BaseModel):
    truncation_order: int
    reached_order: int
    method: str = "strand"
    betti_of_k: List[int] = Field(default_factory=list)
    serre_bound: List[int] = Field(default_factory=list)
    deficits: List[int] = Field(default_factory=list, description="Orders i with b_i < s_i.")
    codepth: int
    embedding_dimension: int


class ProductEntry(BaseModel):
    left: List[int] = Field(..., description="(homological degree, internal degree, index) of the left class.")
    right: List[int]
    target: List[int] = Field(..., description="(homological degree, internal degree) of the product strand.")
    coordinates: List[int]


class ProductSummary(BaseModel):
    checked: int = 0
    nonzero: List[ProductEntry] = Field(default_factory=list)
    used_for_verdict: bool = Field(
        default=True, description="False when J has linear forms and products live in a bigger exterior algebra."
    )

    @property
    def trivial(self) -> bool:
        return not self.nonzero


class Certificate(BaseModel):
    kind: Literal["hypersurface", "codepth_two", "split_injection", "massey"]
    detail: str = ""


class Verdict(BaseModel):
    kind: VerdictKind
    witness: Optional[str] = None
    certificates: List[Certificate] = Field(default_factory=list)
    order: Optional[int] = None

    def headline(self) -> str:
        if self.kind == "non_golod":
            return f"NON-GOLOD (witness: {self.witness})"
        if self.kind == "golod_certified":
            reasons = ", ".join(c.kind.replace("_", "-") for c in self.certificates)
            return f"GOLOD (certified: {reasons})"
        return f"GOLOD-CONSISTENT (Serre equality to N={self.order})"


class GolodReport(BaseModel):
    ideal: List[str] = Field(..., description="Minimal generators of J.")
    name: Optional[str] = None
    codepth: int
    projective_dimension: int
    betti_table: List[BettiEntry] = Field(default_factory=list)
    poincare: Optional[PoincareSummary] = None
    products: Optional[ProductSummary] = None
    tor: Optional[Dict[str, object]] = None
    notes: List[str] = Field(default_factory=list)
    verdict: Verdict
