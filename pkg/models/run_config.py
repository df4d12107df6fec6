from __future__ import annotations

from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field


class OutputFormat(str, Enum):
    JSON = "json"
    TEXT = "text"


class RunConfig(BaseModel):
    """Knobs shared by every command: probe sizes, seeding, budgets and output."""

    probe_bound: int = Field(
        12,
        ge=1,
        description="Largest natural number among the probes of a model.",
        json_schema_extra={"example": 12},
    )
    seed: int = Field(
        0,
        ge=0,
        lt=2**64,
        description="Master seed for probe generation and searches (64-bit).",
        json_schema_extra={"example": 0},
    )
    budget: int = Field(
        1000,
        ge=0,
        description="Number of random trials in a search.",
        json_schema_extra={"example": 1000},
    )
    workers: int = Field(1, ge=1, description="Parallel workers for searches and corpora.")
    output: Optional[str] = Field(None, description="Output file; standard output when absent.")
    format: OutputFormat = Field(OutputFormat.JSON, description="json or text.")
