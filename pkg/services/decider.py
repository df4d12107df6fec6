"""Solvability of equations s = t in models of equational induction.

Both sides are normalized and the verdict depends on which sides are
constant:

  - both constant: solvable iff the constants agree;
  - one side constant c: solvable iff some natural assignment with every
    coordinate at most c works (a coordinatewise-minimal solution never
    needs a larger coordinate);
  - neither constant: always solvable, every variable set to w in N + {w}.
"""
from __future__ import annotations

import itertools
import logging
from typing import Dict

from models.decision import AllOmegaWitness, CaseTag, Decision, NatWitness, Verdict
from services.errors import WitnessMissingError
from services.model_zoo import ModelId, Omega, eval_term
from services.polynorm import Polynomial, eval_nat, normalize
from services.terms import Term, all_variables

logger = logging.getLogger(__name__)


def _search_constant(poly: Polynomial, c: int):
    names = poly.variables()
    if poly.constant_term() > c:
        return None
    for point in itertools.product(range(c + 1), repeat=len(names)):
        env = dict(zip(names, point))
        if poly.evaluate(env) == c:
            return env
    return None


def decide(s: Term, t: Term) -> Decision:
    ps, pt = normalize(s), normalize(t)
    names = all_variables([s, t])

    if ps.is_constant() and pt.is_constant():
        logger.debug("const-const: %s vs %s", ps, pt)
        if ps == pt:
            return Decision(
                status=Verdict.SAT,
                case=CaseTag.CONST_CONST,
                witness=NatWitness(assignment={n: 0 for n in names}),
            )
        return Decision(status=Verdict.UNSAT, case=CaseTag.CONST_CONST)

    if ps.is_constant() or pt.is_constant():
        poly, c = (pt, ps.constant_term()) if ps.is_constant() else (ps, pt.constant_term())
        logger.debug("const-poly: searching %s = %d over the box {0..%d}", poly, c, c)
        found = _search_constant(poly, c)
        if found is None:
            return Decision(status=Verdict.UNSAT, case=CaseTag.CONST_POLY)
        assignment: Dict[str, int] = {n: found.get(n, 0) for n in names}
        return Decision(status=Verdict.SAT, case=CaseTag.CONST_POLY, witness=NatWitness(assignment=assignment))

    logger.debug("poly-poly: %s vs %s", ps, pt)
    return Decision(status=Verdict.SAT, case=CaseTag.POLY_POLY, witness=AllOmegaWitness())


def verify_witness(s: Term, t: Term, d: Decision) -> bool:
    """Re-check a sat decision by evaluation, independently of the normal forms."""
    if d.witness is None:
        raise WitnessMissingError(f"decision {d.status.value}/{d.case.value} has no witness")
    if isinstance(d.witness, NatWitness):
        env = d.witness.assignment
        return eval_nat(s, env) == eval_nat(t, env)
    env = {n: Omega(0) for n in all_variables([s, t])}
    return eval_term(ModelId.ONE_POINT, s, env) == eval_term(ModelId.ONE_POINT, t, env)


def brute_force_satisfiable(s: Term, t: Term, bound: int) -> bool:
    """Oracle: an N-solution with coordinates <= bound, or a solution at all-w in N + {w}."""
    names = all_variables([s, t])
    omega = {n: Omega(0) for n in names}
    if eval_term(ModelId.ONE_POINT, s, omega) == eval_term(ModelId.ONE_POINT, t, omega):
        return True
    return any(
        eval_nat(s, env) == eval_nat(t, env)
        for env in (dict(zip(names, point)) for point in itertools.product(range(bound + 1), repeat=len(names)))
    )
