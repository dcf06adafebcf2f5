"""Command-line entry point: ``ncalc <command> [options]``.

Exit codes: 0 success, 1 usage or input errors, 2 when a specification is not integrable
or a map has no tensor representation.
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Optional, Sequence

import click

from ncalc.algebra.loading import dump_algebra, resolve_algebra
from ncalc.algebra.structure import Algebra, AlgebraElement, norm
from ncalc.calculus.invariants import run_algebra_checks, run_selftest
from ncalc.calculus.numeric_diff import NumericMap, fd_differential
from ncalc.calculus.ode import DifferentialSpec, IntegrabilityReport, integrate
from ncalc.calculus.series import exp, exp_sum_check
from ncalc.config.numeric import NumericConfig
from ncalc.config.series import SeriesConfig
from ncalc.errors import NcalcError, NoRepresentation
from ncalc.ncpoly.expression import is_polynomial
from ncalc.ncpoly.forms import derivative, eval_form
from ncalc.ncpoly.parser import format_expression, parse_expression
from ncalc.ncpoly.taylor import taylor, taylor_series
from ncalc.tensor_rep.components import LinearMapMatrix, component_solve_matrix, representation_basis, solve_components
from ncalc.tensor_rep.operators import CONVENTIONS, DELTA, LEFT_FIRST
from ncalc.utils.rationals import parse_vector

from .output import coordinates, emit_fields, emit_frame, emit_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REJECTED = 2


def _algebra(source: str) -> Algebra:
    return resolve_algebra(source)


def _element(algebra: Algebra, text: str, name: str) -> AlgebraElement:
    try:
        return algebra.element(parse_vector(text))
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint=name) from exc


def _matrix(algebra: Algebra, text: str) -> LinearMapMatrix:
    try:
        rows = [parse_vector(row) for row in text.split(";")]
        return LinearMapMatrix(algebra, rows)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--matrix") from exc


algebra_option = click.option(
    "-a", "--algebra", "algebra_source", default="quaternions", show_default=True,
    help="Builtin algebra name or path to an algebra spec file.",
)
json_option = click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of text.")


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log at DEBUG level.")
def cli(verbose: bool) -> None:
    """Gateaux calculus over finite-dimensional algebras."""

    level = "DEBUG" if verbose else NumericConfig.from_env().logging_level
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


@cli.command("algebra")
@algebra_option
@click.option("--spec", "spec_path", type=click.Path(exists=True, dir_okay=False), help="Algebra spec file.")
@click.option("--check", is_flag=True, help="Run the invariant suite on sampled elements.")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--samples", default=None, type=int, help="Samples per invariant.")
@click.option("--dump", "dump_path", type=click.Path(dir_okay=False), help="Write the algebra as a JSON spec.")
@json_option
def algebra_command(
    algebra_source: str,
    spec_path: Optional[str],
    check: bool,
    seed: int,
    samples: Optional[int],
    dump_path: Optional[str],
    as_json: bool,
) -> int:
    """Dimension, verified flags, representation basis and rank of B."""

    algebra = _algebra(spec_path or algebra_source)
    basis = representation_basis(algebra)
    rank = component_solve_matrix(algebra).rank
    flags = algebra.flags
    info = {
        "algebra": algebra.name,
        "dimension": algebra.dim,
        "basis": list(algebra.basis_labels),
        "unital": flags.unital,
        "associative": flags.associative,
        "division": flags.division,
        "multiplicative_norm": flags.multiplicative_norm,
        "representation": ["δ" if name == DELTA else name for name in basis.generators],
        "representation_complete": basis.complete,
        "rank_b": rank,
    }
    if dump_path:
        Path(dump_path).write_text(dump_algebra(algebra).model_dump_json(indent=2), encoding="utf-8")
        logger.info("Wrote spec of '%s' to %s", algebra.name, dump_path)

    suite = run_algebra_checks(algebra, samples, seed) if check else None
    if as_json:
        payload = dict(info)
        if suite is not None:
            payload["checks"] = suite.to_json()
        emit_json(payload)
    else:
        rows = [(key, ", ".join(value) if isinstance(value, list) else value) for key, value in info.items()]
        emit_fields(rows)
        if suite is not None:
            click.echo("")
            emit_frame(suite.to_frame())
    if suite is not None and not suite.passed:
        return EXIT_ERROR
    return EXIT_OK


@cli.command("diff")
@algebra_option
@click.option("-e", "--expr", "expression_text", required=True, help="Expression in x, e.g. 'x*i*x'.")
@click.option("-n", "--order", default=1, show_default=True, type=click.IntRange(min=1))
@click.option("--at", "point", default=None, help="Evaluate at this point (comma-separated coordinates).")
@click.option("--dir", "directions", multiple=True, help="Direction coordinates; repeat once per order.")
@json_option
def diff_command(
    algebra_source: str,
    expression_text: str,
    order: int,
    point: Optional[str],
    directions: Sequence[str],
    as_json: bool,
) -> int:
    """Symbolic Gateaux derivative of order n, optionally evaluated and cross-checked."""

    algebra = _algebra(algebra_source)
    expression = parse_expression(expression_text, algebra)
    form = derivative(expression, order, algebra)
    if point is None:
        if as_json:
            emit_json({"expression": format_expression(expression), "order": order,
                       "form": form.format(), "words": form.to_json()})
        else:
            click.echo(form.format())
        return EXIT_OK

    x = _element(algebra, point, "--at")
    hs = [_element(algebra, text, "--dir") for text in directions]
    value = eval_form(form, x, *hs)
    residual = None
    if order == 1:
        numeric = fd_differential(NumericMap.from_expression(expression, algebra), x, hs[0], NumericConfig.from_env())
        residual = norm(value.to_real() - numeric.value).value
    if as_json:
        emit_json({"expression": format_expression(expression), "order": order,
                   "value": coordinates(value), "fd_residual": residual})
    else:
        click.echo(value.format())
        if residual is not None:
            click.echo(f"finite-difference residual: {residual:.3e}")
    return EXIT_OK


@cli.command("taylor")
@algebra_option
@click.option("-e", "--expr", "expression_text", required=True)
@click.option("--at", "point", required=True, help="Expansion point x0.")
@click.option("-N", "order", default=3, show_default=True, type=click.IntRange(min=0),
              help="Truncation order for expressions containing inv(...).")
@json_option
def taylor_command(algebra_source: str, expression_text: str, point: str, order: int, as_json: bool) -> int:
    """Taylor polynomial around x0; truncated series when the expression is not polynomial."""

    algebra = _algebra(algebra_source)
    expression = parse_expression(expression_text, algebra)
    x0 = _element(algebra, point, "--at")
    if is_polynomial(expression):
        text = format_expression(taylor(expression, x0))
        truncated = False
    else:
        series = taylor_series(expression, x0, order)
        text = " + ".join(format_expression(layer) for layer in series.layers).replace("+ -", "- ")
        truncated = True
    if as_json:
        emit_json({"expression": format_expression(expression), "at": coordinates(x0),
                   "taylor": text, "truncated_at": order if truncated else None})
    else:
        click.echo(f"{text} + O(|x - x0|^{order + 1})" if truncated else text)
    return EXIT_OK


@cli.command("exp")
@algebra_option
@click.option("-x", "point", required=True, help="Element coordinates; decimals select the floating path.")
@click.option("-y", "other", default=None, help="Second element: compare exp(x + y) with exp(x) exp(y).")
@click.option("-N", "order", default=None, type=click.IntRange(min=0), help="Truncation order.")
@click.option("--exact", is_flag=True, help="Sum in exact rationals.")
@json_option
def exp_command(
    algebra_source: str, point: str, other: Optional[str], order: Optional[int], exact: bool, as_json: bool
) -> int:
    """Truncated exponent series with its remainder bound."""

    algebra = _algebra(algebra_source)
    config = SeriesConfig(exact=exact) if order is None else SeriesConfig(truncation_order=order, exact=exact)
    x = _element(algebra, point, "-x")
    if other is not None:
        report = exp_sum_check(x, _element(algebra, other, "-y"), config=config)
        if as_json:
            emit_json(report.to_json())
        else:
            emit_fields([
                ("exp(x+y) = exp(x)exp(y)", report.equal),
                ("difference norm", f"{report.difference_norm:.3e}"),
                ("commutator norm", f"{report.commutator_norm:.3e}"),
                ("order", report.order),
            ])
        return EXIT_OK

    result = exp(x, config=config)
    if as_json:
        emit_json(result.to_json())
    else:
        click.echo(result.value.format())
        click.echo(f"remainder bound: {result.remainder_bound:.3e} (N = {result.order})")
    return EXIT_OK


@cli.command("integrate")
@click.option("--spec", "spec_path", required=True, type=click.Path(exists=True, dir_okay=False))
@json_option
def integrate_command(spec_path: str, as_json: bool) -> int:
    """Solve dy = F(x)(h) with y(x0) = y0, or report why no solution exists."""

    spec = DifferentialSpec.from_file(spec_path)
    outcome = integrate(spec)
    if isinstance(outcome, IntegrabilityReport):
        if as_json:
            emit_json(outcome.to_json())
        else:
            click.echo(outcome.format())
        return EXIT_REJECTED
    if as_json:
        emit_json({"verdict": "integrable", "solution": format_expression(outcome)})
    else:
        click.echo(f"y = {format_expression(outcome)}")
    return EXIT_OK


@cli.command("solve-tensor")
@algebra_option
@click.option("--map", "map_name", default=None, help="Registered generator name, or 'identity'.")
@click.option("--matrix", "matrix_text", default=None, help="Map matrix, rows split by ';', e.g. '1,0;0,-1'.")
@click.option("--convention", type=click.Choice(CONVENTIONS), default=LEFT_FIRST, show_default=True)
@json_option
def solve_tensor_command(
    algebra_source: str, map_name: Optional[str], matrix_text: Optional[str], convention: str, as_json: bool
) -> int:
    """Standard components of a linear map, over extra generators when needed."""

    if (map_name is None) == (matrix_text is None):
        raise click.UsageError("Pass exactly one of --map or --matrix.")
    algebra = _algebra(algebra_source)
    if map_name is not None:
        name = DELTA if map_name in {"identity", DELTA} else map_name
        matrix = LinearMapMatrix.from_generator(algebra, name)
    else:
        matrix = _matrix(algebra, matrix_text)
    components = solve_components(matrix, convention)
    if as_json:
        emit_json({"algebra": algebra.name, "convention": convention,
                   "components": components.to_json(), "text": components.format()})
    else:
        click.echo(components.format())
    return EXIT_OK


@cli.command("selftest")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--samples", default=None, type=int, help="Samples per invariant.")
@json_option
def selftest_command(seed: int, samples: Optional[int], as_json: bool) -> int:
    """Invariant suite over every builtin algebra plus the calculus acceptance checks."""

    suite = run_selftest(seed, samples)
    if as_json:
        emit_json(suite.to_json())
    else:
        emit_frame(suite.to_frame())
        click.echo(f"{len(suite.results) - len(suite.failures)}/{len(suite.results)} checks passed")
    return EXIT_OK if suite.passed else EXIT_ERROR


def main(argv: Optional[List[str]] = None) -> int:
    try:
        result = cli.main(args=argv, prog_name="ncalc", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return EXIT_ERROR
    except click.exceptions.Abort:
        return EXIT_ERROR
    except NoRepresentation as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_REJECTED
    except (NcalcError, ValueError, KeyError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_ERROR
    return int(result or EXIT_OK)


if __name__ == "__main__":
    raise SystemExit(main())
