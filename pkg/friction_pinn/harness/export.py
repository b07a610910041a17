"""CSV exports of trajectories, events and spectra."""

from pathlib import Path

import numpy as np
import pandas as pd

from friction_pinn.models.trajectory import EventRecord, Trajectory


def trajectory_frame(trajectory: Trajectory) -> pd.DataFrame:
    """
    One row per state: ``t, q_i, u_i, lambda_N_k, lambda_T_k, regime_k``.

    Indices are 1-based; regime codes are 0 stick, 1 slip, 2 separated.
    """
    columns: dict[str, np.ndarray] = {"t": trajectory.times}
    for label, values in [
        ("q", trajectory.q),
        ("u", trajectory.u),
        ("lambda_N", trajectory.lambda_n),
        ("lambda_T", trajectory.lambda_t),
        ("regime", trajectory.regimes),
    ]:
        for i in range(values.shape[1]):
            columns[f"{label}_{i + 1}"] = values[:, i]
    return pd.DataFrame(columns)


def write_trajectory(trajectory: Trajectory, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    trajectory_frame(trajectory).to_csv(path, index=False, float_format="%.12g")
    return path


def write_events(events: list[EventRecord], path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame(
        [e.model_dump(mode="json") for e in events],
        columns=["t_event", "kind", "contact", "bracket_width"],
    )
    frame.to_csv(path, index=False, float_format="%.12g")
    return path


def write_spectrum(frequencies: np.ndarray, amplitudes: np.ndarray, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame({"frequency": frequencies, "amplitude": amplitudes}).to_csv(
        path, index=False, float_format="%.12g"
    )
    return path
