import pytest

from models.reports import CheckStatus
from services.errors import UnboundVariableError
from services.induction_lab import (
    PROP11_STATEMENTS,
    OutcomeKind,
    check_gadget,
    check_induction,
    check_prop11,
    check_q_axioms,
    check_root_gap,
    check_shepherdson,
    induction_report,
    parse_shape,
    run_trial,
    satisfies,
    search_probes,
    search_violations,
)
from services.model_zoo import ModelId, Nat, Omega, OnePointModel, model_ops
from services.parser import parse_literal
from services.terms import ForAll, InductionInstance, Relation

W0, W1 = Omega(0), Omega(1)


def instance(text, var="x"):
    return InductionInstance.of(parse_literal(text), var)


def probes(model_id, bound=12):
    return model_ops(model_id).probes(bound)


class BrokenOnePoint(OnePointModel):
    """Successor of w wraps around to 0, violating Q1."""

    def _succ(self, e):
        return Nat(0) if isinstance(e, Omega) else super()._succ(e)


@pytest.mark.parametrize("bound", [12, 24])
@pytest.mark.parametrize("model_id", list(ModelId))
def test_every_model_satisfies_q(model_id, bound):
    report = check_q_axioms(model_id, probes(model_id, bound))
    assert report.ok
    assert [r.axiom for r in report.results] == [f"Q{i}" for i in range(1, 9)]
    assert all(r.status is CheckStatus.PASS for r in report.results)


def test_broken_successor_fails_q1():
    report = check_q_axioms(BrokenOnePoint(), [Nat(0), Nat(1), W0])
    q1 = report.results[0]
    assert q1.status is CheckStatus.FAIL
    assert q1.witness == ["omega:0"]
    assert not report.ok


def test_outcomes_in_the_standard_model():
    ps = probes("standard")
    assert check_induction("standard", instance("x != 0"), {}, ps).kind is OutcomeKind.BASE_FAILS
    step = check_induction("standard", instance("x <= 3"), {}, ps)
    assert step.kind is OutcomeKind.STEP_FAILS_AT
    assert step.witness == "nat:3"
    assert check_induction("standard", instance("S(x) != x"), {}, ps).kind is OutcomeKind.CONSISTENT_ON_PROBES


def test_max_merge_refutes_equational_induction():
    inst = instance("x + p = p")
    outcome = check_induction("max-merge", inst, {"p": W0}, probes("max-merge"))
    assert outcome.kind is OutcomeKind.CONCLUSION_FAILS_AT
    assert outcome.element == W1
    report = induction_report("max-merge", inst, {"p": W0}, outcome)
    assert report.model_dump(mode="json") == {
        "model": "max-merge",
        "formula": "x + p = p",
        "induction_var": "x",
        "instance": "(0 + p = p & forall x. (x + p = p -> S(x) + p = p)) -> forall x. (x + p = p)",
        "env": {"p": "omega:0"},
        "outcome": "conclusion-fails-at",
        "witness": "omega:1",
        "seed": None,
    }


def test_one_point_refutes_successor_disequation():
    outcome = check_induction("one-point", instance("S(x) != x"), {}, probes("one-point"))
    assert outcome.kind is OutcomeKind.CONCLUSION_FAILS_AT
    assert outcome.witness == "omega:0"


def test_zx_plus_square_root_gap():
    env = {"p": model_ops("zx-plus").nonstandard()[0]}
    outcome = check_induction("zx-plus", instance("x*x <= p"), env, probes("zx-plus", 4))
    assert outcome.kind is OutcomeKind.CONCLUSION_FAILS_AT
    assert outcome.witness == "poly:[1,0]"
    assert check_root_gap(2, probes("zx-plus", 4)).status is CheckStatus.PASS


def test_missing_parameter_is_an_error():
    with pytest.raises(UnboundVariableError):
        check_induction("one-point", instance("x + p = p"), {}, probes("one-point"))


def test_gadgets():
    standard = check_gadget("standard", "mul_comm", {"x": Nat(2), "y": Nat(3)}, probes("standard", 5))
    assert standard.kind is OutcomeKind.BASE_FAILS
    absorbing = check_gadget("left-absorb", "mul_comm", {"x": W0, "y": W1}, probes("left-absorb", 5))
    assert absorbing.kind is OutcomeKind.CONSISTENT_ON_PROBES


def test_satisfies_quantifies_over_probes():
    body = parse_literal("x <= y")
    assert satisfies("standard", ForAll("y", body), {"x": Nat(0)}, [Nat(0), Nat(5)])
    assert not satisfies("standard", ForAll("y", body), {"x": Nat(3)}, [Nat(0), Nat(5)])


def test_prop11():
    assert len(PROP11_STATEMENTS) == 12
    result = check_prop11("one-point", 10, probes("one-point", 3))
    assert result.status is CheckStatus.FAIL
    assert result.witness == ["nat:1", "nat:0", "omega:0"]
    assert check_prop11("zx-plus", 7, probes("zx-plus", 2)[:30]).status is CheckStatus.PASS
    assert check_prop11("left-absorb", 1, probes("left-absorb", 3)).witness == ["omega:0", "omega:1"]
    with pytest.raises(ValueError):
        check_prop11("standard", 13, probes("standard", 2))


def test_shepherdson_holds_in_n():
    result = check_shepherdson("standard", 2, probes("standard", 5))
    assert result.status is CheckStatus.PASS
    assert result.item == "shepherdson-2"


def test_shapes():
    assert parse_shape("nleq") is Relation.NLEQ
    assert parse_shape("!=") is Relation.NEQ
    with pytest.raises(ValueError):
        parse_shape("lt")
    assert search_probes("one-point", 2) == [Nat(0), Nat(1), Nat(2), W0]


def test_search_is_reproducible():
    report = search_violations("max-merge", "eq", 60, seed=11)
    assert report.trials == 60
    assert report.shape == "eq"
    assert report == search_violations("max-merge", "eq", 60, seed=11)
    for finding in report.findings:
        assert finding.outcome == "conclusion-fails-at"
        assert run_trial("max-merge", Relation.EQ, finding.seed, 6) == finding


def test_search_with_workers_matches_serial():
    serial = search_violations("left-absorb", "neq", 40, seed=3)
    parallel = search_violations("left-absorb", "neq", 40, seed=3, workers=2)
    assert parallel == serial


def test_empty_budget():
    report = search_violations("formal-sums", "leq", 0)
    assert report.trials == 0 and report.findings == []


@pytest.mark.slow
def test_formal_sums_disequation_search_completes():
    report = search_violations("formal-sums", "neq", 10000, seed=2026)
    assert report.trials == 10000
    for finding in report.findings:
        assert finding.seed is not None
        assert finding.witness is not None
