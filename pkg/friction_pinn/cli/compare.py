"""compare command: run an experiment file and print the RMS comparison."""

from pathlib import Path
from typing import Optional

import click
from rich.markup import escape

from friction_pinn.app_context import AppContext
from friction_pinn.cli.common import console, format_option, handle_errors, output_json
from friction_pinn.harness.experiment import load_experiment, run_experiment
from friction_pinn.harness.report import report_table


@click.command()
@click.argument("config", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Output directory")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Concurrent methods")
@format_option
@click.pass_obj
@handle_errors
def compare(
    app: AppContext,
    config: Path,
    out: Optional[Path],
    workers: Optional[int],
    output_format: str,
) -> None:
    """
    Run every method of an experiment against the reference solution.

    CONFIG is a TOML or JSON experiment file. Trajectory CSVs, spectra,
    report.txt and report.json are written to the output directory.
    """
    experiment = load_experiment(config)
    out = out or experiment.output_dir or app.app_config.output_dir / experiment.name
    report = run_experiment(
        experiment,
        output_dir=out,
        workers=workers or app.app_config.workers,
        lcp_tol=app.app_config.lcp_tol,
        max_pivots=app.app_config.max_pivots,
    )

    if output_format == "json":
        output_json(report.model_dump(mode="json"))
        return

    console.print(report_table(report))
    for row in report.rows:
        if row.failure is not None:
            console.print(f"[red]{row.label}[/red]: {escape(row.failure)}")
    console.print(f"results written to {out}")
