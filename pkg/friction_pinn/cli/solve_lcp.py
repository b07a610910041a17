"""solve-lcp command: solve one LCP read from JSON."""

import json
from typing import IO, Any, Optional

import click
from pydantic import ValidationError
from rich.table import Table

from friction_pinn.app_context import AppContext
from friction_pinn.cli.common import console, format_option, handle_errors, output_json
from friction_pinn.harness.experiment import ConfigError
from friction_pinn.lcp.pinn import solve_lcp_pinn
from friction_pinn.lcp.pivoting import LcpError, solve_pivoting
from friction_pinn.models.lcp import LcpPinnConfig, LcpProblem, LcpSolution


def _read_problem(source: IO[str]) -> LcpProblem:
    try:
        return LcpProblem.model_validate(json.load(source))
    except json.JSONDecodeError as e:
        raise ConfigError(f"LCP input is not JSON: {e}") from e
    except ValidationError as e:
        raise ConfigError(f"invalid LCP input: {e}") from e


def _solution_dict(solution: LcpSolution) -> dict[str, Any]:
    return solution.model_dump(mode="json")


@click.command("solve-lcp")
@click.argument("source", type=click.File("r"), default="-")
@click.option(
    "--method",
    type=click.Choice(["pivoting", "pinn"]),
    default="pivoting",
    help="Lemke pivoting or a physics-informed network",
)
@click.option("--tol", type=float, default=None, help="Solver tolerance")
@click.option("--seed", type=int, default=0, help="Network seed (pinn)")
@format_option
@click.pass_obj
@handle_errors
def solve_lcp(
    app: AppContext,
    source: IO[str],
    method: str,
    tol: Optional[float],
    seed: int,
    output_format: str,
) -> None:
    """
    Solve the LCP y = A x + b, x >= 0, y >= 0, x y = 0.

    SOURCE is a JSON file (or - for stdin) of the form
    {"A": [[...], ...], "b": [...]}.
    """
    problem = _read_problem(source)
    app.logger.debug("solving a %d-dimensional LCP with %s", problem.size, method)
    if method == "pivoting":
        solution = solve_pivoting(
            problem, tol=tol or app.app_config.lcp_tol, max_pivots=app.app_config.max_pivots
        )
        if not solution.solved:
            raise LcpError(f"pivoting ended with status {solution.status}")
    else:
        cfg = LcpPinnConfig(seed=seed) if tol is None else LcpPinnConfig(seed=seed, tol=tol)
        solution = solve_lcp_pinn(problem, cfg)

    if output_format == "json":
        output_json(_solution_dict(solution))
        return

    table = Table(title=f"LCP solution ({method})")
    table.add_column("i", justify="right")
    table.add_column("x", justify="right")
    table.add_column("y", justify="right")
    for i, (x, y) in enumerate(zip(solution.x, solution.y)):
        table.add_row(str(i + 1), f"{x:.10g}", f"{y:.10g}")
    console.print(table)
    console.print(
        f"status: {solution.status}  residual: {solution.residual:.3e}  "
        f"iterations: {solution.iterations}"
    )
