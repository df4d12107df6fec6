"""weakind command line.

Exit codes: 0 on success, 1 on a negative verdict (unsat, a failed check, a
claim mismatch, a non-identity), 2 on usage or input errors.
"""
from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import List, Optional, Union

import click
from pydantic import BaseModel, ValidationError

from models.decision import IdentityResponse, NormalizeResponse, Verdict
from models.reports import CheckStatus
from models.run_config import OutputFormat, RunConfig
from services import formal_sums as fs
from services.bracketing import BracketQuery, bracket, sign_change_set
from services.claims import run_claim_registry
from services.corpus import render_records, run_corpus
from services.decider import decide
from services.errors import WeakIndError
from services.induction_lab import (
    SHAPES,
    check_induction,
    check_prop11,
    check_q_axioms,
    induction_report,
    search_violations,
)
from services.model_zoo import ModelId, eval_term, format_element, model_ops, parse_env
from services.parser import parse_any, parse_equation, parse_literal, parse_term
from services.polynorm import Polynomial, decide_identity, normalize, vandermonde_oracle
from services.puiseux import TruncatedRoot, integer_part_holds, puiseux_integer_part
from services.terms import (
    InductionInstance,
    Literal,
    gadget_formula,
    render,
    render_formula,
    render_literal,
    shepherdson_scheme,
    variables,
)
from utils.logging_setup import configure_logging
from utils.settings import load_run_config

logger = logging.getLogger(__name__)

MODEL_CHOICE = click.Choice([m.value for m in ModelId])


class InputError(click.ClickException):
    exit_code = 2


class WeakIndGroup(click.Group):
    """Turns domain errors raised by any subcommand into exit code 2."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except WeakIndError as exc:
            raise InputError(str(exc)) from None


def _config(ctx: click.Context) -> RunConfig:
    return ctx.find_root().obj


def emit(ctx: click.Context, payload: Union[BaseModel, dict, list, str], text: Optional[str] = None) -> None:
    config = _config(ctx)
    if config.format is OutputFormat.TEXT and text is not None:
        out = text
    elif isinstance(payload, BaseModel):
        out = payload.model_dump_json()
    elif isinstance(payload, str):
        out = payload
    else:
        out = json.dumps(payload)
    if config.output:
        with open(config.output, "a", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        click.echo(out)


def _coefficients(text: str) -> Polynomial:
    try:
        coeffs = [int(c) for c in text.replace(" ", "").split(",") if c]
    except ValueError:
        raise InputError(f"coefficients are comma-separated integers, got {text!r}") from None
    if not coeffs:
        raise InputError("at least one coefficient is required")
    return Polynomial.univariate(coeffs, "t")


@click.group(cls=WeakIndGroup)
@click.option("--probe-bound", type=int, envvar="WEAKIND_PROBE_BOUND", help="Largest natural probe.")
@click.option("--seed", type=int, envvar="WEAKIND_SEED", help="Master seed (64-bit).")
@click.option("--workers", type=int, envvar="WEAKIND_WORKERS", help="Parallel workers.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), envvar="WEAKIND_FORMAT", help="Output format.")
@click.option("--output", type=click.Path(dir_okay=False), help="Append output to this file instead of stdout.")
@click.option("-v", "--verbose", is_flag=True, help="Debug logging on stderr.")
@click.pass_context
def cli(ctx, probe_bound, seed, workers, fmt, output, verbose):
    """Weak fragments of open induction: decide, normalize, evaluate and check."""
    configure_logging(verbose)
    try:
        ctx.obj = load_run_config(
            environ={}, probe_bound=probe_bound, seed=seed, workers=workers, format=fmt, output=output
        )
    except ValidationError as exc:
        raise click.UsageError("; ".join(f"{'.'.join(map(str, e['loc']))}: {e['msg']}" for e in exc.errors()))
    logger.debug("run config: %s", ctx.obj.model_dump_json())


# -----------------------------------------------------------------------------
# term-core and polynorm
# -----------------------------------------------------------------------------
@cli.command("parse")
@click.argument("text")
@click.pass_context
def parse_cmd(ctx, text):
    """Parse a term or literal and print it back."""
    node = parse_any(text)
    rendered = render_literal(node) if isinstance(node, Literal) else render(node)
    emit(
        ctx,
        {"kind": "literal" if isinstance(node, Literal) else "term", "text": rendered, "variables": sorted(variables(node))},
        rendered,
    )


@cli.command("normalize")
@click.argument("term")
@click.pass_context
def normalize_cmd(ctx, term):
    """Canonical polynomial of a term."""
    poly = normalize(parse_term(term))
    emit(ctx, NormalizeResponse(polynomial=poly.render(), degree=poly.degree()), poly.render())


@cli.command("identity")
@click.argument("left")
@click.argument("right")
@click.pass_context
def identity_cmd(ctx, left, right):
    """Whether LEFT = RIGHT holds for all natural numbers."""
    s, t = parse_term(left), parse_term(right)
    result = IdentityResponse(identity=decide_identity(s, t), oracle=vandermonde_oracle(s, t))
    emit(ctx, result, "identity" if result.identity else "not an identity")
    if not result.identity:
        ctx.exit(1)


@cli.command("gadget")
@click.argument("kind", type=click.Choice(["add_assoc", "right_distr", "left_distr", "mul_comm", "mul_assoc"]))
@click.pass_context
def gadget_cmd(ctx, kind):
    """Print the disequation used to derive a ring law by induction on t."""
    text = render_literal(gadget_formula(kind))
    emit(ctx, {"kind": kind, "formula": text}, text)


@cli.command("scheme")
@click.argument("d", type=int)
@click.pass_context
def scheme_cmd(ctx, d):
    """Print the Shepherdson scheme instance for D >= 2."""
    text = render_formula(shepherdson_scheme(d))
    emit(ctx, {"d": d, "formula": text}, text)


# -----------------------------------------------------------------------------
# dio-decider
# -----------------------------------------------------------------------------
@cli.command("decide")
@click.argument("equation")
@click.pass_context
def decide_cmd(ctx, equation):
    """Decide whether EQUATION has a solution in some model of equational induction."""
    s, t = parse_equation(equation)
    decision = decide(s, t)
    emit(ctx, decision, f"{decision.status.value} ({decision.case.value})")
    if decision.status is Verdict.UNSAT:
        ctx.exit(1)


@cli.command("corpus")
@click.argument("path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.pass_context
def corpus_cmd(ctx, path):
    """Decide every equation in PATH, one record per line."""
    config = _config(ctx)
    records = run_corpus(path, workers=config.workers)
    emit(ctx, render_records(records, "json"), render_records(records, "text"))


# -----------------------------------------------------------------------------
# model-zoo and induction-lab
# -----------------------------------------------------------------------------
@cli.command("eval")
@click.option("--model", "model_id", type=MODEL_CHOICE, required=True)
@click.option("--env", "env_text", default="", help="Bindings such as x=omega:0,y=nat:3.")
@click.argument("term")
@click.pass_context
def eval_cmd(ctx, model_id, env_text, term):
    """Evaluate TERM in a model."""
    model = model_ops(model_id)
    value = format_element(eval_term(model, parse_term(term), parse_env(env_text, model)))
    emit(ctx, {"model": model_id, "term": term, "value": value}, value)


@cli.command("check-q")
@click.option("--model", "model_id", type=MODEL_CHOICE, required=True)
@click.pass_context
def check_q_cmd(ctx, model_id):
    """Check Robinson arithmetic on the model's probes."""
    config = _config(ctx)
    model = model_ops(model_id)
    report = check_q_axioms(model, model.probes(config.probe_bound, config.seed))
    emit(ctx, report, "\n".join(f"{r.axiom} {r.status.value}" for r in report.results))
    if not report.ok:
        ctx.exit(1)


@cli.command("check-ind")
@click.option("--model", "model_id", type=MODEL_CHOICE, required=True)
@click.option("--formula", required=True, help="A literal, e.g. 'x + p = p'.")
@click.option("--var", "var", default="x", show_default=True, help="Induction variable.")
@click.option("--env", "env_text", default="", help="Parameter bindings, e.g. p=omega:0.")
@click.pass_context
def check_ind_cmd(ctx, model_id, formula, var, env_text):
    """Check one literal induction instance on the model's probes."""
    config = _config(ctx)
    model = model_ops(model_id)
    inst = InductionInstance.of(parse_literal(formula), var)
    env = parse_env(env_text, model)
    outcome = check_induction(model, inst, env, model.probes(config.probe_bound, config.seed))
    report = induction_report(model, inst, env, outcome)
    emit(ctx, report, f"{report.outcome}" + (f" {report.witness}" if report.witness else ""))


@cli.command("check-prop11")
@click.option("--model", "model_id", type=MODEL_CHOICE, required=True)
@click.option("--item", type=click.IntRange(1, 12), required=True)
@click.pass_context
def check_prop11_cmd(ctx, model_id, item):
    """Check one consequence of open induction (items 1 to 12) on probe tuples."""
    config = _config(ctx)
    model = model_ops(model_id)
    result = check_prop11(model, item, model.probes(config.probe_bound, config.seed))
    emit(ctx, result, f"{result.status.value}" + (f" {' '.join(result.witness)}" if result.witness else ""))
    if result.status is CheckStatus.FAIL:
        ctx.exit(1)


@cli.group("claims", cls=WeakIndGroup)
def claims_group():
    """The countermodel claim registry."""


@claims_group.command("run")
@click.pass_context
def claims_run_cmd(ctx):
    """Reproduce every registry claim; exit 1 on any mismatch."""
    config = _config(ctx)
    report = run_claim_registry(probe_bound=config.probe_bound, seed=config.seed)
    lines = [f"{'ok  ' if r.matched else 'FAIL'} {r.claim_id}: {r.observed.outcome}" for r in report.results]
    emit(ctx, report, "\n".join(lines))
    if report.mismatches:
        ctx.exit(1)


@cli.command("search")
@click.option("--model", "model_id", type=MODEL_CHOICE, required=True)
@click.option("--shape", type=click.Choice(sorted(SHAPES)), required=True)
@click.option("--budget", type=click.IntRange(min=0), envvar="WEAKIND_BUDGET", default=None)
@click.pass_context
def search_cmd(ctx, model_id, shape, budget):
    """Random literal induction instances; report every conclusion failure with its seed."""
    config = _config(ctx)
    report = search_violations(
        model_id,
        shape,
        config.budget if budget is None else budget,
        seed=config.seed,
        workers=config.workers,
    )
    lines = [f"{report.trials} trials, {len(report.findings)} findings"]
    lines += [f"  seed {f.seed}: {f.formula} with {f.env} fails at {f.witness}" for f in report.findings]
    emit(ctx, report, "\n".join(lines))


# -----------------------------------------------------------------------------
# formal sums, bracketing, puiseux
# -----------------------------------------------------------------------------
@cli.command("nf")
@click.argument("text")
@click.pass_context
def nf_cmd(ctx, text):
    """Normal form of a formal sum such as '2X^3 - X^1 + 4X^0'."""
    s = fs.parse_sum(text)
    nf = fs.normal_form(s)
    emit(
        ctx,
        {
            "input": fs.render_sum(s),
            "normal_form": fs.render_sum(nf),
            "pairs": nf.to_json(),
            "positive": fs.is_positive(nf),
            "nonnegative": fs.is_nonnegative(nf),
        },
        fs.render_sum(nf),
    )


@cli.command("bracket")
@click.option("--coeffs", required=True, help="Coefficients of f, highest degree first, e.g. 1,0,-2.")
@click.option("--q", "q", type=int, default=1, show_default=True)
@click.option("--a", "a", type=int, required=True)
@click.option("--b", "b", type=int, required=True)
@click.pass_context
def bracket_cmd(ctx, coeffs, q, a, b):
    """Least c in [a, b) with f(c/q) <= 0 < f((c+1)/q)."""
    f = _coefficients(coeffs)
    c = bracket(BracketQuery(f, q, a, b))
    emit(ctx, {"c": c, "sign_changes": sorted(sign_change_set(f, q, a, b - 1))}, str(c))


@cli.group("puiseux", cls=WeakIndGroup)
def puiseux_group():
    """Fractional-exponent polynomials."""


@puiseux_group.command("ip")
@click.argument("root")
@click.option("--order", default=None, help="Truncation order; the expansion is exact when absent.")
@click.option("--primes", default=None, help="Prime set, e.g. 2,3; inferred from the exponents when absent.")
@click.pass_context
def puiseux_ip_cmd(ctx, root, order, primes):
    """Integer part of a truncated root given as JSON [[coefficient, exponent], ...]."""
    try:
        pairs = json.loads(root)
        r = TruncatedRoot.of([(str(c), str(e)) for c, e in pairs], order)
        prime_set: Optional[List[int]] = [int(p) for p in primes.split(",")] if primes else None
    except (ValueError, TypeError) as exc:
        raise InputError(f"malformed root: {exc}") from None
    s = puiseux_integer_part(r, prime_set)
    emit(ctx, {"integer_part": s.to_json(), "text": s.render(), "holds": integer_part_holds(s, r)}, s.render())


@cli.command("serve")
@click.option("--host", default="0.0.0.0", show_default=True)
@click.option("--port", type=int, default=8080, show_default=True)
def serve_cmd(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("main:app", host=host, port=port)


def run(argv: Optional[List[str]] = None) -> int:
    """Run the CLI on `argv` and return the exit code instead of exiting."""
    try:
        rv = cli.main(args=argv, prog_name="weakind", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        return 1
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    cli()
