"""eigen-sweep command: linearized sliding stability against friction."""

from typing import Any

import click
import numpy as np
from rich.table import Table

from friction_pinn.app_context import AppContext
from friction_pinn.cli.common import console, format_option, handle_errors, model_spec, output_json
from friction_pinn.dynamics.catalog import build_model
from friction_pinn.dynamics.contact import critical_friction


@click.command("eigen-sweep")
@click.option("--mu-min", type=click.FloatRange(min=0), default=0.0, show_default=True)
@click.option("--mu-max", type=click.FloatRange(min=0), default=1.5, show_default=True)
@click.option("--steps", type=click.IntRange(min=2), default=151, show_default=True)
@click.option(
    "--model",
    default="model2",
    show_default=True,
    help="model1, model2 or a TOML/JSON model file",
)
@click.option("--every", type=click.IntRange(min=1), default=10, help="Table row stride")
@format_option
@click.pass_obj
@handle_errors
def eigen_sweep(
    app: AppContext,
    mu_min: float,
    mu_max: float,
    steps: int,
    model: str,
    every: int,
    output_format: str,
) -> None:
    """
    Sweep the friction coefficient and report where sliding loses stability.

    The critical value is where the largest real part of the linearized
    eigenvalues first turns positive.
    """
    if mu_max <= mu_min:
        raise click.BadParameter("--mu-max must exceed --mu-min", param_hint="--mu-max")
    mech, _ = build_model(model_spec(model))
    sweep = critical_friction(mech, np.linspace(mu_min, mu_max, steps))
    app.logger.debug("eigen sweep over %d values, critical mu %s", steps, sweep.critical_mu)

    if output_format == "json":
        data: dict[str, Any] = sweep.model_dump()
        output_json(data)
        return

    table = Table(title=f"{mech.name}: linearized sliding stability")
    table.add_column("mu", justify="right")
    table.add_column("max Re", justify="right")
    table.add_column("frequencies (rad/s)")
    for i in range(0, steps, every):
        table.add_row(
            f"{sweep.mu[i]:.4g}",
            f"{sweep.max_real[i]:.4e}",
            ", ".join(f"{w:.4g}" for w in sweep.frequencies[i]),
        )
    console.print(table)
    if sweep.critical_mu is None:
        console.print("[green]stable over the whole range[/green]")
    else:
        console.print(f"critical mu: [bold]{sweep.critical_mu:.6f}[/bold]")
    if sweep.merge_mu is not None:
        console.print(f"frequencies merge at mu = {sweep.merge_mu:.4g}")
