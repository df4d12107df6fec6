from __future__ import annotations

from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


class AxiomResult(BaseModel):
    axiom: str = Field(..., json_schema_extra={"example": "Q8"})
    statement: str = Field(..., json_schema_extra={"example": "x <= y <-> exists r (r + x = y)"})
    status: CheckStatus
    witness: Optional[List[str]] = Field(
        None,
        description="Element literals of the first failing (or undecided) tuple.",
        json_schema_extra={"example": ["omega:0", "nat:3"]},
    )


class QReport(BaseModel):
    """Per-axiom verdicts of Robinson arithmetic over a probe set."""

    model: str = Field(..., json_schema_extra={"example": "one-point"})
    probe_count: int
    results: List[AxiomResult]

    @property
    def ok(self) -> bool:
        return all(r.status is not CheckStatus.FAIL for r in self.results)


class PropertyResult(BaseModel):
    """Verdict on one universally closed property over probe tuples."""

    model: str
    item: str = Field(..., json_schema_extra={"example": "1"})
    statement: str = Field(..., json_schema_extra={"example": "x + y = y + x"})
    status: CheckStatus
    witness: Optional[List[str]] = Field(None, json_schema_extra={"example": ["omega:0", "omega:1"]})


class InductionReport(BaseModel):
    """One induction-instance check, as written to JSON lines."""

    model: str = Field(..., json_schema_extra={"example": "max-merge"})
    formula: str = Field(..., json_schema_extra={"example": "x + p = p"})
    induction_var: str = Field("x", json_schema_extra={"example": "x"})
    instance: str = Field(
        "",
        description="The full induction instance: base and step imply the universal closure.",
        json_schema_extra={"example": "(0 + p = p & forall x. (x + p = p -> S(x) + p = p)) -> forall x. (x + p = p)"},
    )
    env: Dict[str, str] = Field(default_factory=dict, json_schema_extra={"example": {"p": "omega:0"}})
    outcome: str = Field(..., json_schema_extra={"example": "conclusion-fails-at"})
    witness: Optional[str] = Field(None, json_schema_extra={"example": "omega:1"})
    seed: Optional[int] = Field(None, description="Trial seed reproducing a search finding.")


class SearchReport(BaseModel):
    model: str
    shape: str = Field(..., json_schema_extra={"example": "neq"})
    budget: int
    seed: int
    trials: int
    findings: List[InductionReport] = Field(default_factory=list)


class Outcome(BaseModel):
    """Expected or observed outcome of a registry claim."""

    outcome: str = Field(..., json_schema_extra={"example": "conclusion-fails-at"})
    witness: Optional[List[str]] = Field(None, json_schema_extra={"example": ["omega:1"]})


class ClaimResult(BaseModel):
    claim_id: str
    model: str
    statement: str
    expected: Outcome
    observed: Outcome
    matched: bool


class RegistryReport(BaseModel):
    probe_bound: int
    results: List[ClaimResult] = Field(default_factory=list)

    @property
    def mismatches(self) -> List[ClaimResult]:
        return [r for r in self.results if not r.matched]
