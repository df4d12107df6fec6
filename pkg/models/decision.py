from __future__ import annotations

from enum import Enum
from typing import Dict, Literal, Optional, Union

from pydantic import BaseModel, Field, model_validator
from typing_extensions import Annotated


class Verdict(str, Enum):
    SAT = "sat"
    UNSAT = "unsat"


class CaseTag(str, Enum):
    CONST_CONST = "const-const"
    CONST_POLY = "const-poly"
    POLY_POLY = "poly-poly"


class NatWitness(BaseModel):
    """A natural-number assignment solving the equation in N."""

    kind: Literal["nat"] = "nat"
    assignment: Dict[str, int] = Field(
        ...,
        description="Value of every variable of the equation.",
        json_schema_extra={"example": {"x": 2}},
    )


class AllOmegaWitness(BaseModel):
    """Every variable set to the absorbing point of the one-point model."""

    kind: Literal["all-omega"] = "all-omega"


Witness = Annotated[Union[NatWitness, AllOmegaWitness], Field(discriminator="kind")]


class Decision(BaseModel):
    """Verdict on whether s = t is solvable in some model of equational induction."""

    status: Verdict = Field(
        ...,
        description="sat if the equation has a solution in some model.",
        json_schema_extra={"example": "sat"},
    )
    case: CaseTag = Field(
        ...,
        description="Which degree case of the decision procedure produced the verdict.",
        json_schema_extra={"example": "const-poly"},
    )
    witness: Optional[Witness] = Field(
        None,
        description="Checkable witness for a sat verdict; null for unsat.",
        json_schema_extra={"example": {"kind": "nat", "assignment": {"x": 2}}},
    )

    @model_validator(mode="after")
    def _witness_matches_case(self) -> "Decision":
        if self.status is Verdict.SAT and self.witness is None:
            raise ValueError("a sat decision carries a witness")
        if isinstance(self.witness, AllOmegaWitness) and self.case is not CaseTag.POLY_POLY:
            raise ValueError("all-omega witnesses only arise when both sides are nonconstant")
        if (
            isinstance(self.witness, NatWitness)
            and self.case is CaseTag.CONST_CONST
            and any(self.witness.assignment.values())
        ):
            raise ValueError("constant equations are witnessed by the zero assignment")
        return self


class EquationRequest(BaseModel):
    equation: str = Field(
        ...,
        description="An equation `s = t` in the term grammar.",
        json_schema_extra={"example": "x*x = 4"},
    )


class TermRequest(BaseModel):
    term: str = Field(..., description="A term.", json_schema_extra={"example": "(x+y)*(x+y)"})


class NormalizeResponse(BaseModel):
    polynomial: str = Field(..., json_schema_extra={"example": "x^2 + 2*x*y + y^2"})
    degree: int = Field(..., json_schema_extra={"example": 2})


class IdentityRequest(BaseModel):
    left: str = Field(..., json_schema_extra={"example": "x*(y+z)"})
    right: str = Field(..., json_schema_extra={"example": "x*y + x*z"})


class IdentityResponse(BaseModel):
    identity: bool = Field(..., description="Verdict of coefficient comparison.")
    oracle: bool = Field(..., description="Verdict of grid evaluation.")


class CorpusRecord(BaseModel):
    """One corpus line: a decision, or the error that kept the line from being decided."""

    line: int = Field(..., description="1-based line number in the corpus file.")
    input: str = Field(..., json_schema_extra={"example": "x*x = 4"})
    decision: Optional[Decision] = None
    verified: Optional[bool] = Field(None, description="Whether the witness re-checks by evaluation.")
    error: Optional[str] = None
