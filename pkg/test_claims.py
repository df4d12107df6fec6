import pytest

from models.reports import Outcome
from services.claims import DEFAULT_REGISTRY, ClaimKind, ClaimRecord, observe, run_claim_registry
from services.model_zoo import ModelId


def claim(claim_id):
    return next(c for c in DEFAULT_REGISTRY if c.claim_id == claim_id)


def test_registry_ids_are_unique_and_cover_every_model():
    ids = [c.claim_id for c in DEFAULT_REGISTRY]
    assert len(ids) == len(set(ids))
    assert {c.model for c in DEFAULT_REGISTRY} == set(ModelId)


@pytest.mark.parametrize("probe_bound", [12, 24])
def test_registry_reproduces(probe_bound):
    report = run_claim_registry(probe_bound=probe_bound)
    assert report.mismatches == []
    assert len(report.results) == len(DEFAULT_REGISTRY)
    assert all(r.matched for r in report.results)


@pytest.mark.parametrize(
    "claim_id, outcome, witness",
    [
        ("max-merge/x+p=p", "conclusion-fails-at", ["omega:1"]),
        ("one-point/diff-ring", "cancellation", ["omega:0", "nat:0", "nat:1"]),
        ("zx-plus/square-nleq", "conclusion-fails-at", ["poly:[1,0]"]),
        ("zx-plus/double-neq", "consistent-on-probes", None),
        ("left-absorb/antisymmetry", "fail", ["omega:0", "omega:1"]),
        ("formal-sums/add-comm", "fail", ["sum:[(1,0)]", "sum:[(1,1)]"]),
        ("formal-sums/not-positive", "not-positive", None),
        ("standard/shepherdson", "pass", None),
    ],
)
def test_individual_claims(claim_id, outcome, witness):
    assert observe(claim(claim_id)) == Outcome(outcome=outcome, witness=witness)


def test_mutated_expectation_is_reported():
    original = claim("max-merge/x+p=p")
    mutated = original.model_copy(update={"expected": Outcome(outcome="conclusion-fails-at", witness=["omega:0"])})
    report = run_claim_registry([mutated, claim("one-point/q")])
    assert [r.claim_id for r in report.mismatches] == ["max-merge/x+p=p"]
    assert report.mismatches[0].observed.witness == ["omega:1"]


def test_errors_become_outcomes():
    broken = ClaimRecord(
        claim_id="one-point/unbound",
        model=ModelId.ONE_POINT,
        kind=ClaimKind.INDUCTION,
        formula="x + p = p",
        expected=Outcome(outcome="consistent-on-probes"),
        statement="p is never bound",
    )
    report = run_claim_registry([broken])
    assert report.results[0].observed.outcome == "error"
    assert len(report.mismatches) == 1


def test_empty_registry():
    report = run_claim_registry([])
    assert report.results == [] and report.mismatches == []


def test_report_serializes():
    report = run_claim_registry([claim("standard/succ-neq")], probe_bound=6)
    payload = report.model_dump(mode="json")
    assert payload["probe_bound"] == 6
    assert payload["results"][0]["observed"] == {"outcome": "consistent-on-probes", "witness": None}
