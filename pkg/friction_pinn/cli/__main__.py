# friction_pinn/cli/__main__.py

"""
CLI for friction-pinn.

Simulate nonsmooth friction dynamics with LCP time stepping and
physics-informed networks, and compare them to event-driven references.

For more info, run:

```sh
friction-pinn --help
```
"""

import click

from friction_pinn import __version__
from friction_pinn.app_context import AppContext
from friction_pinn.cli.compare import compare
from friction_pinn.cli.eigen_sweep import eigen_sweep
from friction_pinn.cli.simulate import simulate
from friction_pinn.cli.solve_lcp import solve_lcp

CONTEXT_SETTINGS = dict(help_option_names=["-h", "--help"], default_map={"obj": {}})


@click.version_option(__version__, "--version", "-v")
@click.group(context_settings=CONTEXT_SETTINGS)
@click.pass_context
def cli(ctx: click.Context) -> None:
    """
    Nonsmooth friction dynamics with LCPs and physics-informed networks.

    Solve single LCPs, integrate stick-slip models, sweep their linear
    stability and compare methods against reference solutions.
    """

    ctx.obj = AppContext()


# Register commands
cli.add_command(solve_lcp)
cli.add_command(simulate)
cli.add_command(eigen_sweep)
cli.add_command(compare)


if __name__ == "__main__":
    cli()
