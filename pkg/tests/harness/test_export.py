from pathlib import Path

import numpy as np
import pandas as pd

from friction_pinn.dynamics.catalog import initial_state, model_one, model_two
from friction_pinn.dynamics.time_stepping import simulate
from friction_pinn.harness.export import (
    trajectory_frame,
    write_events,
    write_spectrum,
    write_trajectory,
)
from friction_pinn.models.trajectory import EventKind, EventRecord


def test_two_dof_frame_columns() -> None:
    model = model_two()
    traj = simulate(model, initial_state(model, [-1.0, -1.0], [1.0, 1.0]), 0.003, 1e-3)
    frame = trajectory_frame(traj)
    assert list(frame.columns) == [
        "t",
        "q_1",
        "q_2",
        "u_1",
        "u_2",
        "lambda_N_1",
        "lambda_T_1",
        "regime_1",
    ]
    assert len(frame) == 4
    np.testing.assert_allclose(frame["t"], traj.times)


def test_written_trajectory_reads_back(tmp_path: Path) -> None:
    model = model_one()
    traj = simulate(model, initial_state(model, [0.0], [0.2]), 0.05, 0.01)
    path = write_trajectory(traj, tmp_path / "out" / "conventional.csv")
    frame = pd.read_csv(path)
    assert frame.shape == (6, 6)
    np.testing.assert_allclose(frame["q_1"], traj.q[:, 0], rtol=1e-11)
    assert frame["regime_1"].tolist() == [0] * 6


def test_events_csv(tmp_path: Path) -> None:
    events = [
        EventRecord(t_event=0.1, kind=EventKind.STICK_TO_SLIP, bracket_width=1e-10),
        EventRecord(t_event=6.2, kind=EventKind.SLIP_TO_STICK),
        EventRecord(t_event=7.4, kind=EventKind.SLIP_REVERSAL),
    ]
    frame = pd.read_csv(write_events(events, tmp_path / "events.csv"))
    assert list(frame.columns) == ["t_event", "kind", "contact", "bracket_width"]
    assert frame["kind"].tolist() == ["stick_to_slip", "slip_to_stick", "slip_reversal"]


def test_empty_events_csv_has_header(tmp_path: Path) -> None:
    path = write_events([], tmp_path / "events.csv")
    assert path.read_text().strip() == "t_event,kind,contact,bracket_width"


def test_spectrum_csv(tmp_path: Path) -> None:
    path = write_spectrum(np.array([0.0, 1.0]), np.array([0.0, 2.5]), tmp_path / "s.csv")
    frame = pd.read_csv(path)
    assert frame["amplitude"].tolist() == [0.0, 2.5]
