"""simulate command: integrate one model with one method."""

from pathlib import Path
from typing import Any, Optional, TypedDict

import click
import numpy as np
from rich.table import Table

from friction_pinn.app_context import AppContext
from friction_pinn.cli.common import (
    console,
    format_option,
    handle_errors,
    model_spec,
    output_json,
)
from friction_pinn.dynamics.catalog import build_model
from friction_pinn.dynamics.pinn_stepping import pinn_simulate
from friction_pinn.dynamics.time_stepping import default_lcp_solver
from friction_pinn.dynamics.time_stepping import simulate as run_stepper
from friction_pinn.harness.experiment import pinn_config, run_oracle
from friction_pinn.harness.export import write_events, write_trajectory
from friction_pinn.harness.metrics import rms
from friction_pinn.models.experiment import MethodSpec, ModelSpec, OracleSpec
from friction_pinn.models.mechanics import FrictionLaw, Regime
from friction_pinn.models.trajectory import Trajectory

METHODS = [
    "conventional",
    "rk4",
    "single",
    "dual",
    "advanced_single",
    "advanced_dual",
    "oracle",
]


class SummaryDict(TypedDict):
    """Type for the run summary."""

    method: str
    dt: float
    steps: int
    t_final: float
    q_final: list[float]
    u_final: list[float]
    rms_q: list[float]
    regime_share: dict[str, float]
    diagnostics: dict[str, int]
    files: list[str]


def _with_friction(
    spec: ModelSpec, law: Optional[str], mu_s: Optional[float], delta: Optional[float]
) -> ModelSpec:
    if law is None and mu_s is None and delta is None:
        return spec
    base = spec.friction
    if base is None:
        model, _ = build_model(spec)
        base = model.friction_law(0)
    update: dict[str, Any] = {}
    if law is not None:
        update["kind"] = law
    if mu_s is not None:
        update["mu_s"] = mu_s
    if delta is not None:
        update["delta"] = delta
    friction = FrictionLaw.model_validate({**base.model_dump(), **update})
    return spec.model_copy(update={"friction": friction})


def _summary(trajectory: Trajectory, files: list[Path]) -> SummaryDict:
    codes = trajectory.regimes.ravel()
    return {
        "method": trajectory.method_tag,
        "dt": trajectory.dt,
        "steps": len(trajectory.states) - 1,
        "t_final": trajectory.final.t,
        "q_final": trajectory.final.q.tolist(),
        "u_final": trajectory.final.u.tolist(),
        "rms_q": [rms(trajectory.q[:, i]) for i in range(trajectory.q.shape[1])],
        "regime_share": {r.name.lower(): float(np.mean(codes == r)) for r in Regime},
        "diagnostics": trajectory.diagnostics.model_dump(),
        "files": [str(f) for f in files],
    }


@click.command()
@click.option(
    "--model",
    default="model1",
    show_default=True,
    help="model1, model2 or a TOML/JSON model file",
)
@click.option("--example", type=click.IntRange(1, 2), default=1, help="model2 example")
@click.option("--method", type=click.Choice(METHODS), default="conventional", show_default=True)
@click.option("--dt", type=click.FloatRange(min=0, min_open=True), default=1e-3, show_default=True)
@click.option("--order", type=click.IntRange(1, 100), default=4, help="IRK stages (PINN)")
@click.option("--t-end", type=click.FloatRange(min=0), default=10.0, show_default=True)
@click.option("--law", type=click.Choice(["rational", "exponential", "constant"]), default=None)
@click.option("--mu-s", type=click.FloatRange(min=0), default=None, help="Static friction")
@click.option("--delta", type=click.FloatRange(min=0), default=None, help="Rational decay")
@click.option("--seed", type=int, default=0)
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Output directory")
@click.option("--save-net", is_flag=True, help="Save the last step network (PINN)")
@format_option
@click.pass_obj
@handle_errors
def simulate(
    app: AppContext,
    model: str,
    example: int,
    method: str,
    dt: float,
    order: int,
    t_end: float,
    law: Optional[str],
    mu_s: Optional[float],
    delta: Optional[float],
    seed: int,
    out: Optional[Path],
    save_net: bool,
    output_format: str,
) -> None:
    """
    Simulate a friction model and write its trajectory CSV.

    The oracle method writes an events CSV as well.
    """
    spec = _with_friction(model_spec(model, example), law, mu_s, delta)
    mech, initial = build_model(spec)
    out = out or app.app_config.output_dir
    v_eps = app.app_config.stick_velocity_tol
    lcp = default_lcp_solver(app.app_config.lcp_tol, app.app_config.max_pivots)
    files: list[Path] = []

    if method == "oracle":
        trajectory, events = run_oracle(OracleSpec(), mech, initial, t_end, dt)
        files.append(write_events(events, out / f"{trajectory.method_tag}_events.csv"))
        stem = trajectory.method_tag
    elif method in ("conventional", "rk4"):
        stepping = "conventional" if method == "conventional" else "rk4"
        trajectory = run_stepper(mech, initial, t_end, dt, stepping, lcp=lcp, v_eps=v_eps)
        stem = f"{trajectory.method_tag}_dt{dt:g}"
    else:
        method_spec = MethodSpec.model_validate({"scheme": method, "dt": dt, "order": order})
        stem = method_spec.file_stem
        net_path = out / f"{stem}_net.json" if save_net else None
        if net_path is not None:
            net_path.parent.mkdir(parents=True, exist_ok=True)
        trajectory = pinn_simulate(
            mech,
            initial,
            t_end,
            dt,
            pinn_config(method_spec, seed),
            lcp=lcp,
            v_eps=v_eps,
            net_path=net_path,
        )
        if net_path is not None:
            files.append(net_path)
    files.insert(0, write_trajectory(trajectory, out / f"{stem}.csv"))

    summary = _summary(trajectory, files)
    if output_format == "json":
        output_json(summary)
        return

    table = Table(title=f"{mech.name}: {summary['method']} (dt={dt:g})")
    table.add_column("Quantity")
    table.add_column("Value", overflow="fold")
    table.add_row("steps", str(summary["steps"]))
    table.add_row("t final", f"{summary['t_final']:.6g}")
    table.add_row("q final", ", ".join(f"{v:.6g}" for v in summary["q_final"]))
    table.add_row("u final", ", ".join(f"{v:.6g}" for v in summary["u_final"]))
    table.add_row("RMS q", ", ".join(f"{v:.6g}" for v in summary["rms_q"]))
    for name, share in summary["regime_share"].items():
        table.add_row(f"{name} share", f"{share:.1%}")
    for name, count in summary["diagnostics"].items():
        if count:
            table.add_row(name.replace("_", " "), str(count))
    table.add_row("files", "\n".join(summary["files"]))
    console.print(table)
