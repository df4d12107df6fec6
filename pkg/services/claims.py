"""Regression registry of the countermodel claims, each with its exact expected outcome."""
from __future__ import annotations

import logging
from enum import Enum
from typing import Dict, List, Optional, Sequence

from pydantic import BaseModel, Field

from models.reports import CheckStatus, ClaimResult, Outcome, RegistryReport
from services import formal_sums as fs
from services.errors import WeakIndError
from services.induction_lab import (
    check_induction,
    check_prop11,
    check_q_axioms,
    check_root_gap,
    check_shepherdson,
)
from services.model_zoo import CancellationFailure, ModelId, diff_ring, format_element, model_ops, parse_element
from services.parser import parse_literal
from services.terms import InductionInstance

logger = logging.getLogger(__name__)


class ClaimKind(str, Enum):
    INDUCTION = "induction"
    Q_AXIOMS = "q-axioms"
    PROPERTY = "property"
    DIFF_RING = "diff-ring"
    ROOT_GAP = "root-gap"
    POSITIVITY = "positivity"
    SHEPHERDSON = "shepherdson"


class ClaimRecord(BaseModel):
    """One reproducible claim about a model."""

    claim_id: str = Field(..., json_schema_extra={"example": "max-merge/x+p=p"})
    model: ModelId = Field(..., json_schema_extra={"example": "max-merge"})
    kind: ClaimKind
    formula: Optional[str] = Field(
        None,
        description="Literal for induction claims, formal sum for positivity claims.",
        json_schema_extra={"example": "x + p = p"},
    )
    induction_var: str = "x"
    env: Dict[str, str] = Field(default_factory=dict, json_schema_extra={"example": {"p": "omega:0"}})
    items: List[int] = Field(default_factory=list, description="Property items or exponents checked together.")
    expected: Outcome
    statement: str = Field(..., description="What the claim shows, in words.")


def _claim(claim_id, model, kind, expected, statement, witness=None, **fields) -> ClaimRecord:
    return ClaimRecord(
        claim_id=claim_id,
        model=model,
        kind=kind,
        expected=Outcome(outcome=expected, witness=witness),
        statement=statement,
        **fields,
    )


def _induction(claim_id, model, formula, expected, statement, witness=None, env=None) -> ClaimRecord:
    return _claim(
        claim_id,
        model,
        ClaimKind.INDUCTION,
        expected,
        statement,
        witness=[witness] if witness else None,
        formula=formula,
        env=env or {},
    )


ONE_POINT, MAX_MERGE, LEFT_ABSORB = ModelId.ONE_POINT, ModelId.MAX_MERGE, ModelId.LEFT_ABSORB
ZX_PLUS, FORMAL_SUMS, STANDARD = ModelId.ZX_PLUS, ModelId.FORMAL_SUMS, ModelId.STANDARD
CONCLUSION = "conclusion-fails-at"
CONSISTENT = "consistent-on-probes"

DEFAULT_REGISTRY: List[ClaimRecord] = [
    # N + {w}
    _claim("one-point/q", ONE_POINT, ClaimKind.Q_AXIOMS, "pass", "N + {w} satisfies Robinson arithmetic"),
    _induction(
        "one-point/succ-neq", ONE_POINT, "S(x) != x", CONCLUSION,
        "the one-point model refutes disequation induction for Sx != x", "omega:0",
    ),
    _claim(
        "one-point/cancellation", ONE_POINT, ClaimKind.PROPERTY, "fail",
        "w + 0 = w + 1 refutes additive cancellation", ["omega:0", "nat:0", "nat:1"], items=[6],
    ),
    _claim(
        "one-point/diff-ring", ONE_POINT, ClaimKind.DIFF_RING, "cancellation",
        "pairs over N + {w} do not form a ring of differences", ["omega:0", "nat:0", "nat:1"],
    ),
    # N + {w0, w1}, max-merging
    _claim("max-merge/q", MAX_MERGE, ClaimKind.Q_AXIOMS, "pass", "the max-merge model satisfies Robinson arithmetic"),
    _claim(
        "max-merge/ring-laws", MAX_MERGE, ClaimKind.PROPERTY, "pass",
        "max-merge operations are commutative, associative and distributive", items=[1, 2, 3, 4, 5],
    ),
    _induction(
        "max-merge/x+p=p", MAX_MERGE, "x + p = p", CONCLUSION,
        "w1 + w0 != w0 although 0 + w0 = w0 and the step holds, so equational induction fails",
        "omega:1", env={"p": "omega:0"},
    ),
    # Z[X]+
    _claim("zx-plus/q", ZX_PLUS, ClaimKind.Q_AXIOMS, "pass", "Z[X]+ satisfies Robinson arithmetic"),
    _induction(
        "zx-plus/square-leq", ZX_PLUS, "x*x <= p", CONCLUSION,
        "X has no square root, so induction for x^2 <= y fails at X", "poly:[1,0]", env={"p": "poly:[1,0]"},
    ),
    _induction(
        "zx-plus/cube-leq", ZX_PLUS, "x*x*x <= p", CONCLUSION,
        "X has no cube root, so induction for x^3 <= y fails at X", "poly:[1,0]", env={"p": "poly:[1,0]"},
    ),
    _induction(
        "zx-plus/square-nleq", ZX_PLUS, "p !<= x*x", CONCLUSION,
        "induction for the negated inequality X !<= x^2 fails at X", "poly:[1,0]", env={"p": "poly:[1,0]"},
    ),
    _induction(
        "zx-plus/double-neq", ZX_PLUS, "x + x != p", CONSISTENT,
        "X is not even, and disequation induction for x + x != X survives", env={"p": "poly:[1,0]"},
    ),
    _claim(
        "zx-plus/root-gap", ZX_PLUS, ClaimKind.ROOT_GAP, "pass",
        "no element of Z[X]+ has square or cube between X's neighbours", items=[2, 3],
    ),
    _claim(
        "zx-plus/diff-ring", ZX_PLUS, ClaimKind.DIFF_RING, "ring",
        "pairs of Z[X]+ elements behave as signed polynomials",
    ),
    # N + {w0, w1}, left-absorbing
    _claim("left-absorb/q", LEFT_ABSORB, ClaimKind.Q_AXIOMS, "pass", "the left-absorbing model satisfies Robinson arithmetic"),
    _claim(
        "left-absorb/add-comm", LEFT_ABSORB, ClaimKind.PROPERTY, "fail",
        "w0 + w1 != w1 + w0", ["omega:0", "omega:1"], items=[1],
    ),
    _claim(
        "left-absorb/mul-comm", LEFT_ABSORB, ClaimKind.PROPERTY, "fail",
        "w0*w1 != w1*w0", ["omega:0", "omega:1"], items=[3],
    ),
    _claim(
        "left-absorb/antisymmetry", LEFT_ABSORB, ClaimKind.PROPERTY, "fail",
        "w0 <= w1 and w1 <= w0 although w0 != w1", ["omega:0", "omega:1"], items=[8],
    ),
    _induction(
        "left-absorb/succ-neq", LEFT_ABSORB, "S(x) != x", CONCLUSION,
        "S w0 = w0 refutes induction for Sx != x", "omega:0",
    ),
    _induction(
        "left-absorb/p-nleq-x", LEFT_ABSORB, "p !<= x", CONCLUSION,
        "w0 !<= 0 and the step holds, yet w0 <= w0", "omega:0", env={"p": "omega:0"},
    ),
    _induction(
        "left-absorb/x+p=p", LEFT_ABSORB, "x + p = p", CONCLUSION,
        "inequality induction does not give equational induction: w1 + w0 != w0", "omega:1",
        env={"p": "omega:0"},
    ),
    # Nonnegative formal sums
    _claim("formal-sums/q", FORMAL_SUMS, ClaimKind.Q_AXIOMS, "pass", "nonnegative formal sums satisfy Robinson arithmetic"),
    _claim(
        "formal-sums/positive-1", FORMAL_SUMS, ClaimKind.POSITIVITY, "positive",
        "-X + X^2 is positive", formula="-X^1 + X^2",
    ),
    _claim(
        "formal-sums/positive-2", FORMAL_SUMS, ClaimKind.POSITIVITY, "positive",
        "-X^2 + X + 2X^2 is positive", formula="-X^2 + X^1 + 2X^2",
    ),
    _claim(
        "formal-sums/not-positive", FORMAL_SUMS, ClaimKind.POSITIVITY, "not-positive",
        "X - X^2 is not positive", formula="X^1 - X^2",
    ),
    _claim(
        "formal-sums/add-comm", FORMAL_SUMS, ClaimKind.PROPERTY, "fail",
        "addition of formal sums is order-significant: 1 + X != X + 1", ["sum:[(1,0)]", "sum:[(1,1)]"], items=[1],
    ),
    # N
    _induction("standard/succ-neq", STANDARD, "S(x) != x", CONSISTENT, "N satisfies induction for Sx != x"),
    _claim(
        "standard/shepherdson", STANDARD, ClaimKind.SHEPHERDSON, "pass",
        "the Shepherdson scheme holds in N", items=[2, 3],
    ),
]


def _status(result) -> Outcome:
    return Outcome(outcome=result.status.value, witness=result.witness)


def observe(claim: ClaimRecord, probe_bound: int = 12, seed: int = 0) -> Outcome:
    model = model_ops(claim.model)
    probes = model.probes(probe_bound, seed)

    if claim.kind is ClaimKind.INDUCTION:
        inst = InductionInstance.of(parse_literal(claim.formula), claim.induction_var)
        env = {name: parse_element(literal, model) for name, literal in claim.env.items()}
        outcome = check_induction(model, inst, env, probes)
        return Outcome(outcome=outcome.kind.value, witness=[outcome.witness] if outcome.witness else None)

    if claim.kind is ClaimKind.Q_AXIOMS:
        report = check_q_axioms(model, probes)
        failed = [r.axiom for r in report.results if r.status is CheckStatus.FAIL]
        return Outcome(outcome="pass" if not failed else "fail", witness=failed or None)

    if claim.kind in (ClaimKind.PROPERTY, ClaimKind.SHEPHERDSON, ClaimKind.ROOT_GAP):
        for item in claim.items:
            if claim.kind is ClaimKind.PROPERTY:
                result = check_prop11(model, item, probes)
            elif claim.kind is ClaimKind.SHEPHERDSON:
                result = check_shepherdson(model, item, probes)
            else:
                result = check_root_gap(item, probes)
            if result.status is not CheckStatus.PASS:
                return _status(result)
        return Outcome(outcome="pass")

    if claim.kind is ClaimKind.DIFF_RING:
        ring = diff_ring(model, probes)
        if isinstance(ring, CancellationFailure):
            return Outcome(outcome=ring.law, witness=[format_element(e) for e in ring.witness])
        return Outcome(outcome="ring")

    positive = fs.is_positive(fs.parse_sum(claim.formula))
    return Outcome(outcome="positive" if positive else "not-positive")


def run_claim_registry(
    registry: Optional[Sequence[ClaimRecord]] = None, probe_bound: int = 12, seed: int = 0
) -> RegistryReport:
    registry = DEFAULT_REGISTRY if registry is None else registry
    report = RegistryReport(probe_bound=probe_bound)
    for claim in registry:
        try:
            observed = observe(claim, probe_bound, seed)
        except WeakIndError as exc:
            observed = Outcome(outcome="error", witness=[str(exc)])
        matched = observed == claim.expected
        if not matched:
            logger.error(
                "claim %s: expected %s %s, observed %s %s",
                claim.claim_id,
                claim.expected.outcome,
                claim.expected.witness,
                observed.outcome,
                observed.witness,
            )
        report.results.append(
            ClaimResult(
                claim_id=claim.claim_id,
                model=claim.model.value,
                statement=claim.statement,
                expected=claim.expected,
                observed=observed,
                matched=matched,
            )
        )
    return report
