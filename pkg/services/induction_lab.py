"""Probe-scale checks of Robinson arithmetic, its consequences, and literal induction.

Every check here quantifies over a finite probe set, so a "pass" means "holds
on probes" and an existential that finds no witness is inconclusive rather
than false. Induction instances are checked base first, then the step at every
probe and a few predecessors below it, then the conclusion.
"""
from __future__ import annotations

import itertools
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from models.reports import AxiomResult, CheckStatus, InductionReport, PropertyResult, QReport, SearchReport
from services.errors import UnboundVariableError
from services.model_zoo import POLY_VAR, Model, ModelElem, ModelId, Poly, eval_term, format_element, model_ops
from services.polynorm import Polynomial
from services.terms import (
    And,
    ForAll,
    Formula,
    GadgetKind,
    Implies,
    InductionInstance,
    Literal,
    Or,
    Relation,
    gadget_formula,
    random_term,
    render_formula,
    render_literal,
    shepherdson_scheme,
)

logger = logging.getLogger(__name__)

ModelRef = Union[ModelId, str, Model]
Env = Mapping[str, ModelElem]

PREDECESSOR_DEPTH = 3


# -----------------------------------------------------------------------------
# Formula satisfaction
# -----------------------------------------------------------------------------
def satisfies(m: ModelRef, f: Formula, env: Env, probes: Sequence[ModelElem] = ()) -> bool:
    """Truth of f under env; universal quantifiers range over `probes`."""
    model = model_ops(m)
    if isinstance(f, Literal):
        left = eval_term(model, f.left, env)
        right = eval_term(model, f.right, env)
        if f.relation is Relation.EQ:
            return model.eq(left, right)
        if f.relation is Relation.NEQ:
            return not model.eq(left, right)
        if f.relation is Relation.LEQ:
            return model.leq(left, right)
        return not model.leq(left, right)
    if isinstance(f, And):
        return all(satisfies(model, c, env, probes) for c in f.conjuncts)
    if isinstance(f, Or):
        return any(satisfies(model, d, env, probes) for d in f.disjuncts)
    if isinstance(f, Implies):
        return not satisfies(model, f.antecedent, env, probes) or satisfies(model, f.consequent, env, probes)
    if isinstance(f, ForAll):
        return all(satisfies(model, f.body, {**env, f.var: e}, probes) for e in probes)
    raise TypeError(f"not a formula: {f!r}")


# -----------------------------------------------------------------------------
# Induction instances
# -----------------------------------------------------------------------------
class OutcomeKind(str, Enum):
    BASE_FAILS = "base-fails"
    STEP_FAILS_AT = "step-fails-at"
    CONCLUSION_FAILS_AT = "conclusion-fails-at"
    CONSISTENT_ON_PROBES = "consistent-on-probes"


@dataclass(frozen=True)
class InductionOutcome:
    kind: OutcomeKind
    element: Optional[ModelElem] = None
    env: Tuple[Tuple[str, ModelElem], ...] = ()

    @property
    def witness(self) -> Optional[str]:
        return format_element(self.element) if self.element is not None else None


def _step_candidates(model: Model, probes: Sequence[ModelElem], depth: int) -> List[ModelElem]:
    seen: Dict[ModelElem, None] = {}
    for p in probes:
        seen.setdefault(p, None)
        e: Optional[ModelElem] = p
        for _ in range(depth):
            e = model.predecessor(e)
            if e is None or e in seen:
                break
            seen[e] = None
    return list(seen)


def check_induction(
    m: ModelRef,
    inst: InductionInstance,
    env: Env,
    probes: Sequence[ModelElem],
    predecessor_depth: int = PREDECESSOR_DEPTH,
) -> InductionOutcome:
    model = model_ops(m)
    for name in inst.parameters:
        if name not in env:
            raise UnboundVariableError(name)
    var = inst.induction_var
    frozen_env = tuple(sorted(env.items()))

    def phi(e: ModelElem) -> bool:
        return satisfies(model, inst.formula, {**env, var: e})

    if not phi(model.zero()):
        return InductionOutcome(OutcomeKind.BASE_FAILS, env=frozen_env)
    for e in _step_candidates(model, probes, predecessor_depth):
        if phi(e) and not phi(model.succ(e)):
            return InductionOutcome(OutcomeKind.STEP_FAILS_AT, e, frozen_env)
    for e in probes:
        if not phi(e):
            return InductionOutcome(OutcomeKind.CONCLUSION_FAILS_AT, e, frozen_env)
    return InductionOutcome(OutcomeKind.CONSISTENT_ON_PROBES, env=frozen_env)


def induction_report(
    m: ModelRef, inst: InductionInstance, env: Env, outcome: InductionOutcome, seed: Optional[int] = None
) -> InductionReport:
    return InductionReport(
        model=model_ops(m).model_id.value,
        formula=render_literal(inst.formula),
        induction_var=inst.induction_var,
        instance=render_formula(inst.as_formula()),
        env={k: format_element(v) for k, v in sorted(env.items())},
        outcome=outcome.kind.value,
        witness=outcome.witness,
        seed=seed,
    )


def check_gadget(m: ModelRef, kind: Union[GadgetKind, str], env: Env, probes: Sequence[ModelElem]) -> InductionOutcome:
    """Induction on t of the disequation that turns a failed ring law into a failed equation."""
    return check_induction(m, InductionInstance.of(gadget_formula(kind), "t"), env, probes)


# -----------------------------------------------------------------------------
# Robinson arithmetic
# -----------------------------------------------------------------------------
Q_STATEMENTS = {
    "Q1": "Sx != 0",
    "Q2": "Sx = Sy -> x = y",
    "Q3": "x != 0 -> exists y (x = Sy)",
    "Q4": "x + 0 = x",
    "Q5": "x + Sy = S(x + y)",
    "Q6": "x*0 = 0",
    "Q7": "x*Sy = x*y + x",
    "Q8": "x <= y <-> exists r (r + x = y)",
}


def _first_failure(
    probes: Sequence[ModelElem], arity: int, law: Callable[..., bool]
) -> Optional[Tuple[ModelElem, ...]]:
    for combo in itertools.product(probes, repeat=arity):
        if not law(*combo):
            return combo
    return None


def _result(axiom: str, status: CheckStatus, witness: Optional[Iterable[ModelElem]] = None) -> AxiomResult:
    return AxiomResult(
        axiom=axiom,
        statement=Q_STATEMENTS[axiom],
        status=status,
        witness=[format_element(e) for e in witness] if witness is not None else None,
    )


def _universal(axiom: str, probes, arity, law) -> AxiomResult:
    bad = _first_failure(probes, arity, law)
    return _result(axiom, CheckStatus.PASS if bad is None else CheckStatus.FAIL, bad)


def check_q_axioms(m: ModelRef, probes: Sequence[ModelElem]) -> QReport:
    model = model_ops(m)
    probes = [model.check(p) for p in probes]
    zero = model.zero()
    results = [
        _universal("Q1", probes, 1, lambda x: model.succ(x) != zero),
        _universal("Q2", probes, 2, lambda x, y: model.succ(x) != model.succ(y) or x == y),
    ]

    # Q3: predecessor search over the probes plus the structural predecessor.
    q3 = _result("Q3", CheckStatus.PASS)
    for x in probes:
        if x == zero:
            continue
        candidates = list(probes)
        structural = model.predecessor(x)
        if structural is not None:
            candidates.insert(0, structural)
        if not any(model.succ(y) == x for y in candidates):
            q3 = _result("Q3", CheckStatus.INCONCLUSIVE, (x,))
            break
    results.append(q3)

    results += [
        _universal("Q4", probes, 1, lambda x: model.add(x, zero) == x),
        _universal("Q5", probes, 2, lambda x, y: model.add(x, model.succ(y)) == model.succ(model.add(x, y))),
        _universal("Q6", probes, 1, lambda x: model.mul(x, zero) == zero),
        _universal(
            "Q7", probes, 2, lambda x, y: model.mul(x, model.succ(y)) == model.add(model.mul(x, y), x)
        ),
    ]

    # Q8: a witness without <= is a failure; <= without a found witness is only undecided.
    q8 = _result("Q8", CheckStatus.PASS)
    for x in probes:
        reached = {model.add(r, x) for r in probes}
        for y in probes:
            found = y in reached or any(model.add(r, x) == y for r in model.residues(x, y))
            if found and not model.leq(x, y):
                q8 = _result("Q8", CheckStatus.FAIL, (x, y))
                break
            if not found and model.leq(x, y) and q8.status is CheckStatus.PASS:
                q8 = _result("Q8", CheckStatus.INCONCLUSIVE, (x, y))
        if q8.status is CheckStatus.FAIL:
            break
    results.append(q8)

    report = QReport(model=model.model_id.value, probe_count=len(probes), results=results)
    for r in report.results:
        if r.status is not CheckStatus.PASS:
            logger.info("%s on %s: %s at %s", r.axiom, report.model, r.status.value, r.witness)
    return report


# -----------------------------------------------------------------------------
# Consequences of open induction
# -----------------------------------------------------------------------------
PROP11_STATEMENTS = {
    1: "x + y = y + x",
    2: "x + (y + z) = (x + y) + z",
    3: "x*y = y*x",
    4: "x*(y + z) = x*y + x*z",
    5: "x*(y*z) = (x*y)*z",
    6: "x + y = x + z -> y = z",
    7: "x <= y | y <= x",
    8: "x <= y & y <= x -> x = y",
    9: "x <= y & y <= z -> x <= z",
    10: "x <= y <-> x + z <= y + z",
    11: "z != 0 & x*z = y*z -> x = y",
    12: "z != 0 -> (x <= y <-> x*z <= y*z)",
}


def _prop11_law(model: Model, item: int) -> Tuple[int, Callable[..., bool]]:
    add, mul, leq = model.add, model.mul, model.leq
    zero = model.zero()
    laws: Dict[int, Tuple[int, Callable[..., bool]]] = {
        1: (2, lambda x, y: add(x, y) == add(y, x)),
        2: (3, lambda x, y, z: add(x, add(y, z)) == add(add(x, y), z)),
        3: (2, lambda x, y: mul(x, y) == mul(y, x)),
        4: (3, lambda x, y, z: mul(x, add(y, z)) == add(mul(x, y), mul(x, z))),
        5: (3, lambda x, y, z: mul(x, mul(y, z)) == mul(mul(x, y), z)),
        6: (3, lambda x, y, z: add(x, y) != add(x, z) or y == z),
        7: (2, lambda x, y: leq(x, y) or leq(y, x)),
        8: (2, lambda x, y: not (leq(x, y) and leq(y, x)) or x == y),
        9: (3, lambda x, y, z: not (leq(x, y) and leq(y, z)) or leq(x, z)),
        10: (3, lambda x, y, z: leq(x, y) == leq(add(x, z), add(y, z))),
        11: (3, lambda x, y, z: z == zero or mul(x, z) != mul(y, z) or x == y),
        12: (3, lambda x, y, z: z == zero or leq(x, y) == leq(mul(x, z), mul(y, z))),
    }
    if item not in laws:
        raise ValueError(f"property items run from 1 to 12, got {item}")
    return laws[item]


def check_prop11(m: ModelRef, item: int, probes: Sequence[ModelElem]) -> PropertyResult:
    model = model_ops(m)
    probes = [model.check(p) for p in probes]
    arity, law = _prop11_law(model, item)
    bad = _first_failure(probes, arity, law)
    return PropertyResult(
        model=model.model_id.value,
        item=str(item),
        statement=PROP11_STATEMENTS[item],
        status=CheckStatus.PASS if bad is None else CheckStatus.FAIL,
        witness=[format_element(e) for e in bad] if bad is not None else None,
    )


def check_shepherdson(m: ModelRef, d: int, probes: Sequence[ModelElem]) -> PropertyResult:
    """The Shepherdson scheme for d over probe pairs (x, xp), with y ranging over the probes."""
    model = model_ops(m)
    probes = [model.check(p) for p in probes]
    scheme = shepherdson_scheme(d)
    bad = _first_failure(probes, 2, lambda x, xp: satisfies(model, scheme, {"x": x, "xp": xp}, probes))
    return PropertyResult(
        model=model.model_id.value,
        item=f"shepherdson-{d}",
        statement=f"scheme instance for d = {d}",
        status=CheckStatus.PASS if bad is None else CheckStatus.FAIL,
        witness=[format_element(e) for e in bad] if bad is not None else None,
    )


def check_root_gap(r: int, probes: Sequence[ModelElem], target: Optional[ModelElem] = None) -> PropertyResult:
    """In Z[X]+, X has no r-th root: for constants c, (c+1)^r < X; for nonconstant y, y^r > X."""
    model = model_ops(ModelId.ZX_PLUS)
    target = model.check(target if target is not None else Poly(Polynomial.variable(POLY_VAR)))

    def power(e: ModelElem) -> ModelElem:
        value = model.one()
        for _ in range(r):
            value = model.mul(value, e)
        return value

    def gap(y: ModelElem) -> bool:
        if y.poly.is_constant():
            bound = power(model.succ(y))
            return model.leq(bound, target) and bound != target
        bound = power(y)
        return model.leq(target, bound) and bound != target

    bad = _first_failure([model.check(p) for p in probes], 1, gap)
    return PropertyResult(
        model=model.model_id.value,
        item=f"root-gap-{r}",
        statement=f"{format_element(target)} lies strictly between consecutive {r}-th powers",
        status=CheckStatus.PASS if bad is None else CheckStatus.FAIL,
        witness=[format_element(e) for e in bad] if bad is not None else None,
    )


# -----------------------------------------------------------------------------
# Randomized search
# -----------------------------------------------------------------------------
SHAPES = {
    "eq": Relation.EQ,
    "neq": Relation.NEQ,
    "leq": Relation.LEQ,
    "nleq": Relation.NLEQ,
}

SEARCH_VARIABLES = ("x", "p")


def parse_shape(shape: Union[str, Relation]) -> Relation:
    if isinstance(shape, Relation):
        return shape
    if shape in SHAPES:
        return SHAPES[shape]
    return Relation(shape)


def search_probes(m: ModelRef, bound: int) -> List[ModelElem]:
    model = model_ops(m)
    return [model.numeral(n) for n in range(bound + 1)] + model.nonstandard()


def random_instance(rng: random.Random, relation: Relation) -> InductionInstance:
    left = random_term(rng, SEARCH_VARIABLES, depth=rng.randint(1, 5), max_products=2)
    right = random_term(rng, SEARCH_VARIABLES, depth=rng.randint(1, 5), max_products=2)
    return InductionInstance.of(Literal(relation, left, right), "x")


def run_trial(model_id: str, relation: Relation, trial_seed: int, probe_bound: int) -> Optional[InductionReport]:
    """One reproducible trial: random literal and parameter env drawn from `trial_seed`."""
    model = model_ops(model_id)
    rng = random.Random(trial_seed)
    inst = random_instance(rng, relation)
    probes = search_probes(model, probe_bound)
    nonstandard = model.nonstandard()
    env: Dict[str, ModelElem] = {}
    for name in inst.parameters:
        if nonstandard and rng.random() < 0.5:
            env[name] = rng.choice(nonstandard)
        else:
            env[name] = rng.choice(probes)
    outcome = check_induction(model, inst, env, probes)
    if outcome.kind is not OutcomeKind.CONCLUSION_FAILS_AT:
        return None
    return induction_report(model, inst, env, outcome, seed=trial_seed)


def _run_trial_args(args: Tuple[str, Relation, int, int]) -> Optional[InductionReport]:
    return run_trial(*args)


def search_violations(
    m: ModelRef,
    shape: Union[str, Relation],
    budget: int,
    seed: int = 0,
    probe_bound: int = 6,
    workers: int = 1,
) -> SearchReport:
    """Random literal induction instances; every conclusion failure is returned with its trial seed."""
    model = model_ops(m)
    relation = parse_shape(shape)
    master = random.Random(seed)
    trial_seeds = [master.getrandbits(64) for _ in range(budget)]
    jobs = [(model.model_id.value, relation, s, probe_bound) for s in trial_seeds]

    if workers > 1 and jobs:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = pool.map(_run_trial_args, jobs, chunksize=max(1, len(jobs) // (workers * 8)))
            outcomes = list(results)
    else:
        outcomes = []
        for i, job in enumerate(jobs, start=1):
            outcomes.append(_run_trial_args(job))
            if i % 1000 == 0:
                logger.info("search %s/%s: %d of %d trials", model.model_id.value, relation.name, i, budget)

    findings = [o for o in outcomes if o is not None]
    for finding in findings:
        logger.warning(
            "induction fails on probes in %s: %s with %s at %s (seed %d)",
            finding.model,
            finding.formula,
            finding.env,
            finding.witness,
            finding.seed,
        )
    return SearchReport(
        model=model.model_id.value,
        shape=relation.name.lower(),
        budget=budget,
        seed=seed,
        trials=len(outcomes),
        findings=findings,
    )
