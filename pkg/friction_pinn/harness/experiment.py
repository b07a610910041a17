"""Experiment loading and execution.

An experiment runs the reference oracle and every configured method on the
same model, then compares RMS values, relative errors, stick-slip validity
and spectral peaks. Methods run concurrently; the report is assembled in
configuration order, so identical configs give identical reports.
"""

import json
import tomllib
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, NamedTuple

import numpy as np
from pydantic import ValidationError

from friction_pinn.dynamics.catalog import build_model
from friction_pinn.dynamics.contact import ModelError
from friction_pinn.dynamics.pinn_stepping import pinn_simulate
from friction_pinn.dynamics.reference import (
    EventLocationError,
    root_shooting_simulate_2dof,
    switching_simulate_1dof,
)
from friction_pinn.dynamics.time_stepping import SteppingError, default_lcp_solver, simulate
from friction_pinn.harness.export import write_events, write_spectrum, write_trajectory
from friction_pinn.harness.metrics import (
    MetricError,
    peaks,
    relative_error,
    rms,
    spectrum,
    validity_check,
)
from friction_pinn.harness.report import write_report
from friction_pinn.logging.logging import get_logger
from friction_pinn.models.experiment import (
    ComparisonReport,
    ComparisonRow,
    ExperimentConfig,
    MethodSpec,
    OracleSpec,
)
from friction_pinn.models.integration import PinnStepConfig
from friction_pinn.models.mechanics import MechModel, SystemState
from friction_pinn.models.trajectory import EventRecord, Trajectory

logger = get_logger(__name__)

MIN_ORACLE_SAMPLE = 1e-3


class ConfigError(Exception):
    """Raised when an experiment or model file cannot be read or validated."""

    pass


class MethodRun(NamedTuple):
    spec: MethodSpec
    trajectory: Trajectory | None
    failure: str | None


def read_config_file(path: Path) -> dict[str, Any]:
    """
    Parse a TOML or JSON file into a dict.

    Raises:
        ConfigError: If the file is missing or malformed
    """
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e}") from e
    try:
        if path.suffix.lower() == ".json":
            data = json.loads(text)
        else:
            data = tomllib.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as e:
        raise ConfigError(f"cannot parse {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must hold a table at the top level")
    return data


def load_experiment(path: Path) -> ExperimentConfig:
    """
    Raises:
        ConfigError: If the file is unreadable or fails validation
    """
    try:
        return ExperimentConfig.model_validate(read_config_file(path))
    except ValidationError as e:
        raise ConfigError(f"invalid experiment {path}: {e}") from e


def pinn_config(spec: MethodSpec, seed: int) -> PinnStepConfig:
    """Step-network settings of a PINN method spec."""
    overrides: dict[str, Any] = {"scheme": spec.scheme, "order": spec.order, "seed": seed}
    for field in ("hidden_layers", "activation", "tol", "max_iter"):
        value = getattr(spec, field)
        if value is not None:
            overrides[field] = value
    return PinnStepConfig(**overrides)


def run_method(
    spec: MethodSpec,
    model: MechModel,
    initial: SystemState,
    t_end: float,
    seed: int = 0,
    v_eps: float = 1e-6,
    lcp_tol: float = 1e-9,
    max_pivots: int = 1000,
) -> Trajectory:
    """
    Run one method spec.

    Raises:
        SteppingError: If a step fails
    """
    lcp = default_lcp_solver(lcp_tol, max_pivots)
    if spec.scheme in ("conventional", "rk4"):
        return simulate(model, initial, t_end, spec.dt, spec.scheme, lcp=lcp, v_eps=v_eps)
    return pinn_simulate(
        model, initial, t_end, spec.dt, pinn_config(spec, seed), lcp=lcp, v_eps=v_eps
    )


def run_oracle(
    oracle: OracleSpec, model: MechModel, initial: SystemState, t_end: float, sample_dt: float
) -> tuple[Trajectory, list[EventRecord]]:
    """
    Run the reference solver that fits the model, or the one requested.

    Raises:
        ModelError: If no reference solver fits the model
        EventLocationError: If an event cannot be located
    """
    kind = oracle.kind
    if kind is None:
        kind = "switching" if model.prescribed_normal and model.n_dof == 1 else "root_shooting"
    solver = switching_simulate_1dof if kind == "switching" else root_shooting_simulate_2dof
    return solver(model, initial, t_end, oracle.event_tol, oracle.sample_dt or sample_dt)


def quantities(model: MechModel) -> list[str]:
    """Compared quantities: contact forces, then displacements and velocities."""
    names = [f"lambda_N_{k + 1}" for k in range(model.n_contacts)]
    names += [f"lambda_T_{k + 1}" for k in range(model.n_contacts)]
    names += [f"q_{i + 1}" for i in range(model.n_dof)]
    names += [f"u_{i + 1}" for i in range(model.n_dof)]
    return names


def _series(trajectory: Trajectory, quantity: str) -> np.ndarray:
    label, index = quantity.rsplit("_", 1)
    column = {
        "lambda_N": trajectory.lambda_n,
        "lambda_T": trajectory.lambda_t,
        "q": trajectory.q,
        "u": trajectory.u,
    }[label]
    return column[:, int(index) - 1]


def _row(
    label: str,
    tag: str,
    trajectory: Trajectory,
    names: list[str],
    oracle: tuple[Trajectory, dict[str, float]] | None,
    is_oracle: bool = False,
) -> ComparisonRow:
    values = {q: rms(_series(trajectory, q)) for q in names}
    errors: dict[str, float | None] = {}
    valid = None
    if is_oracle:
        errors = {q: 0.0 for q in names}
    elif oracle is not None:
        valid = validity_check(trajectory, oracle[0])
        for q in names:
            try:
                errors[q] = relative_error(values[q], oracle[1][q]) if valid else None
            except MetricError:
                errors[q] = None
    found: list[tuple[float, float]] = []
    if len(trajectory.states) > 1:
        found = peaks(*spectrum(trajectory.q[:, 0], trajectory.dt))[:5]
    return ComparisonRow(
        label=label,
        method_tag=tag,
        dt=trajectory.dt,
        is_oracle=is_oracle,
        rms=values,
        errors=errors,
        valid=valid,
        peaks=found,
        diagnostics=trajectory.diagnostics.model_dump(),
    )


def run_experiment(
    cfg: ExperimentConfig,
    output_dir: Path | None = None,
    workers: int = 1,
    lcp_tol: float = 1e-9,
    max_pivots: int = 1000,
) -> ComparisonReport:
    """
    Run the oracle and every method, write CSVs and the report.

    Failed methods are reported with the failing stage; they never stop the
    other methods.

    Raises:
        ModelError: If the model spec cannot be built
    """
    model, initial = build_model(cfg.model)
    out = output_dir or cfg.output_dir or Path("results") / cfg.name
    names = quantities(model)
    rows: list[ComparisonRow] = []
    logger.info("experiment %s: %d methods, output in %s", cfg.name, len(cfg.methods), out)

    oracle_result: tuple[Trajectory, dict[str, float]] | None = None
    if cfg.oracle is not None:
        dts = [m.dt for m in cfg.methods]
        sample_dt = max(min(dts), MIN_ORACLE_SAMPLE) if dts else MIN_ORACLE_SAMPLE
        try:
            trajectory, events = run_oracle(cfg.oracle, model, initial, cfg.t_end, sample_dt)
        except (EventLocationError, ModelError) as e:
            logger.error("oracle failed: %s", e)
            rows.append(
                ComparisonRow(
                    label="oracle",
                    method_tag="oracle",
                    dt=sample_dt,
                    is_oracle=True,
                    failure=f"oracle: {e}",
                )
            )
        else:
            write_trajectory(trajectory, out / f"{trajectory.method_tag}.csv")
            write_events(events, out / f"{trajectory.method_tag}_events.csv")
            row = _row(
                f"{trajectory.method_tag}@dt={sample_dt:g}",
                trajectory.method_tag,
                trajectory,
                names,
                None,
                is_oracle=True,
            )
            rows.append(row)
            oracle_result = (trajectory, row.rms)
            _write_spectrum(trajectory, out / f"{trajectory.method_tag}_spectrum.csv")

    def run(spec: MethodSpec) -> MethodRun:
        try:
            trajectory = run_method(
                spec, model, initial, cfg.t_end, cfg.seed, cfg.v_eps, lcp_tol, max_pivots
            )
        except (SteppingError, ModelError, ValueError) as e:
            logger.error("%s failed: %s", spec.label, e)
            return MethodRun(spec, None, str(e))
        return MethodRun(spec, trajectory, None)

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        runs = list(pool.map(run, cfg.methods))

    for method in runs:
        spec = method.spec
        if method.trajectory is None:
            rows.append(
                ComparisonRow(
                    label=spec.label,
                    method_tag=spec.method_tag,
                    dt=spec.dt,
                    failure=method.failure,
                )
            )
            continue
        write_trajectory(method.trajectory, out / f"{spec.file_stem}.csv")
        _write_spectrum(method.trajectory, out / f"{spec.file_stem}_spectrum.csv")
        rows.append(_row(spec.label, spec.method_tag, method.trajectory, names, oracle_result))

    report = ComparisonReport(experiment=cfg.name, quantities=names, rows=rows)
    write_report(report, out)
    return report


def _write_spectrum(trajectory: Trajectory, path: Path) -> None:
    if len(trajectory.states) > 1:
        write_spectrum(*spectrum(trajectory.q[:, 0], trajectory.dt), path)
