import numpy as np
import pytest

from friction_pinn.dynamics.catalog import initial_state, model_one, model_two
from friction_pinn.dynamics.time_stepping import (
    SteppingError,
    simulate,
    step_conventional,
    step_count,
    step_rk4_lcp,
)
from friction_pinn.dynamics.reference import switching_simulate_1dof
from friction_pinn.harness.metrics import validity_check
from friction_pinn.models.lcp import LcpProblem, LcpSolution, LcpStatus
from friction_pinn.models.mechanics import FrictionLaw, MechModel, Regime

FRICTIONLESS = FrictionLaw(kind="constant", mu_s=0.0)


def _unit_belt(**kwargs) -> MechModel:
    return model_one(belt_velocity=1.0, normal_force=1.0, **kwargs)


def _failing_solver(problem: LcpProblem) -> LcpSolution:
    zeros = np.zeros(problem.size)
    return LcpSolution(x=zeros, y=zeros, residual=1.0, status=LcpStatus.MAX_ITER)


@pytest.mark.parametrize("method", ["conventional", "rk4"])
def test_frictionless_oscillator_period(method: str) -> None:
    """x'' = -x returns to its start after one period"""
    model = model_one(law=FRICTIONLESS)
    initial = initial_state(model, [1.0], [0.0])
    dt = 2 * np.pi / 2000
    traj = simulate(model, initial, 2 * np.pi + 1e-12, dt, method)  # type: ignore[arg-type]
    assert len(traj.states) == 2001
    assert traj.final.t == pytest.approx(2 * np.pi)
    tol = 1e-2 if method == "conventional" else 1e-6
    assert traj.final.q[0] == pytest.approx(1.0, abs=tol)
    assert traj.final.u[0] == pytest.approx(0.0, abs=tol)


def test_belt_oscillator_sticks_until_spring_saturates() -> None:
    """Stick on the belt until k q exceeds mu_s F_n at q = 0.1"""
    model = _unit_belt()
    initial = initial_state(model, [0.0], [1.0])
    traj = simulate(model, initial, 0.09, 0.01)
    np.testing.assert_allclose(traj.u[:, 0], 1.0, atol=1e-12)
    assert all(state.regime == [Regime.STICK] for state in traj.states)
    np.testing.assert_allclose(traj.lambda_t[1:, 0], traj.q[:-1, 0], atol=1e-12)


def test_slip_after_static_limit() -> None:
    model = _unit_belt()
    state = initial_state(model, [0.5], [1.0])
    after = step_conventional(model, state, 0.01)
    assert after.regime == [Regime.SLIP]
    assert after.u[0] == pytest.approx(1.0 + (-0.5 + 0.1) * 0.01)
    assert after.lambda_t[0] == pytest.approx(0.1)


def test_rk4_step_holds_forces_fixed() -> None:
    model = model_one(law=FRICTIONLESS)
    state = initial_state(model, [0.0], [1.0])
    after = step_rk4_lcp(model, state, 0.1)
    assert after.q[0] == pytest.approx(np.sin(0.1), abs=1e-6)
    assert after.u[0] == pytest.approx(np.cos(0.1), abs=1e-6)


def test_spring_model_stays_physical() -> None:
    model = model_two(mu=1.2)
    traj = simulate(model, initial_state(model, [-1.0, -1.0], [1.0, 1.0]), 0.2, 1e-3)
    assert np.all(traj.lambda_n >= 0)
    mu = 1.2
    assert np.all(np.abs(traj.lambda_t) <= mu * traj.lambda_n)
    assert traj.diagnostics.lcp_iterations >= 0


def test_zero_horizon_gives_single_state() -> None:
    model = model_one()
    initial = initial_state(model, [0.0], [1.0], t0=3.0)
    traj = simulate(model, initial, 3.0, 0.1)
    assert len(traj.states) == 1
    assert traj.final.t == 3.0


def test_times_follow_the_grid() -> None:
    model = model_one()
    traj = simulate(model, initial_state(model, [0.0], [1.0], t0=1.0), 1.5, 0.1)
    np.testing.assert_allclose(traj.times, 1.0 + 0.1 * np.arange(6))


def test_failed_lcp_names_step_and_stage() -> None:
    model = model_one()
    initial = initial_state(model, [0.0], [1.0])
    with pytest.raises(SteppingError, match="failed in lcp") as excinfo:
        simulate(model, initial, 0.05, 0.01, lcp=_failing_solver)
    assert excinfo.value.step_index == 0
    assert excinfo.value.stage == "lcp"


@pytest.mark.parametrize(
    "t0, t_end, dt, expected",
    [(0.0, 1.0, 0.1, 10), (0.0, 1.05, 0.1, 10), (1.0, 1.0, 0.5, 0), (0.0, 0.3, 0.1, 3)],
)
def test_step_count(t0: float, t_end: float, dt: float, expected: int) -> None:
    assert step_count(t0, t_end, dt) == expected


def test_step_count_rejects_bad_input() -> None:
    with pytest.raises(ValueError, match="dt must be positive"):
        step_count(0.0, 1.0, 0.0)
    with pytest.raises(ValueError, match="before the initial time"):
        step_count(1.0, 0.5, 0.1)


def test_default_belt_releases_at_static_limit() -> None:
    """k q reaches mu_s F_n = 1 at t = 5 on the v0 = 0.2 belt"""
    model = model_one()
    traj = simulate(model, initial_state(model, [0.0], [0.2]), 5.5, 0.01)
    slipping = traj.regimes[:, 0] == int(Regime.SLIP)
    assert not slipping[traj.times < 4.9].any()
    assert traj.times[np.argmax(slipping)] == pytest.approx(5.0, abs=0.05)


def test_conventional_converges_to_switching_reference() -> None:
    model = model_one()
    initial = initial_state(model, [0.0], [0.2])
    oracle, _ = switching_simulate_1dof(model, initial, 12.0, sample_dt=2.5e-3)
    errors = []
    for dt in (0.04, 0.01, 0.0025):
        traj = simulate(model, initial, 12.0, dt)
        expected = np.interp(traj.times, oracle.times, oracle.q[:, 0])
        errors.append(float(np.max(np.abs(traj.q[:, 0] - expected))))
    assert errors[0] > errors[1] > errors[2]
    assert errors[2] < 0.05


def test_rk4_energy_balance_matches_friction_work() -> None:
    """With frozen forces E_{k+1} - E_k equals lambda_T dq up to the RK4 error"""
    model = model_one()
    traj = simulate(model, initial_state(model, [0.0], [0.2]), 12.0, 0.01, "rk4")
    energy = 0.5 * (traj.u[:, 0] ** 2 + traj.q[:, 0] ** 2)
    work = traj.lambda_t[1:, 0] * np.diff(traj.q[:, 0])
    np.testing.assert_allclose(np.diff(energy), work, atol=1e-7)


def test_conventional_reproduces_reference_regimes() -> None:
    model = model_one()
    initial = initial_state(model, [0.0], [0.2])
    oracle, _ = switching_simulate_1dof(model, initial, 30.0, sample_dt=1e-3)
    traj = simulate(model, initial, 30.0, 0.01)
    assert validity_check(traj, oracle)
