"""Tests for the trajectory model."""

import numpy as np
import pytest

from friction_pinn.models.mechanics import Regime, SystemState
from friction_pinn.models.trajectory import EventKind, EventRecord, Trajectory


def _state(t: float, q: float = 0.0) -> SystemState:
    return SystemState(
        t=t,
        q=[q],
        u=[1.0],
        lambda_n=[1.0],
        lambda_t=[0.0],
        gap=[0.0],
        gamma_t=[0.0],
        regime=[Regime.STICK],
    )


def test_columns_stack_states() -> None:
    traj = Trajectory(
        method_tag="conventional_lcp", dt=0.1, states=[_state(0.0), _state(0.1, 0.5)]
    )
    np.testing.assert_allclose(traj.times, [0.0, 0.1])
    assert traj.q.shape == (2, 1)
    assert traj.q[1, 0] == 0.5
    assert traj.regimes.tolist() == [[0], [0]]
    assert traj.final.t == 0.1


def test_single_state_is_valid() -> None:
    traj = Trajectory(method_tag="oracle", dt=1.0, states=[_state(2.0)])
    assert traj.final.t == 2.0


def test_rejects_nonuniform_grid() -> None:
    with pytest.raises(ValueError, match="not uniformly spaced"):
        Trajectory(method_tag="x", dt=0.1, states=[_state(0.0), _state(0.1), _state(0.3)])


def test_rejects_decreasing_times() -> None:
    with pytest.raises(ValueError, match="strictly increasing"):
        Trajectory(method_tag="x", dt=0.1, states=[_state(0.1), _state(0.0)])


def test_event_bracket_nonnegative() -> None:
    with pytest.raises(ValueError):
        EventRecord(t_event=1.0, kind=EventKind.SEPARATION, bracket_width=-1.0)
    assert EventRecord(t_event=1.0, kind="slip_to_stick").kind == EventKind.SLIP_TO_STICK
