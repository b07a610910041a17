"""Conventional LCP time-stepping: the semi-implicit Moreau scheme and RK4-LCP.

Both steppers solve the step LCP assembled at the start of the step. The
Moreau scheme applies the recovered impulses in one semi-implicit Euler
update; RK4-LCP holds the step-average forces fixed and integrates the smooth
dynamics with the classical four-stage Runge-Kutta method.
"""

from functools import partial
from typing import Callable, Literal

import numpy as np

from friction_pinn.dynamics.contact import (
    ModelError,
    assemble_lcp,
    contact_forces,
    h_vector,
    make_state,
    mass_inverse,
)
from friction_pinn.lcp.pivoting import LcpError, solve_pivoting
from friction_pinn.logging.logging import get_logger
from friction_pinn.models.lcp import LcpProblem, LcpSolution
from friction_pinn.models.mechanics import AssembledLcp, MechModel, SystemState
from friction_pinn.models.trajectory import RunDiagnostics, Trajectory

logger = get_logger(__name__)

LcpSolver = Callable[[LcpProblem], LcpSolution]
SteppingMethod = Literal["conventional", "rk4"]


class SteppingError(Exception):
    """Raised when a step fails; names the step, its time and the failing stage."""

    def __init__(self, message: str, step_index: int, time: float, stage: str) -> None:
        super().__init__(f"step {step_index} (t={time:.6g}) failed in {stage}: {message}")
        self.step_index = step_index
        self.time = time
        self.stage = stage


def default_lcp_solver(tol: float = 1e-9, max_pivots: int = 1000) -> LcpSolver:
    return partial(solve_pivoting, tol=tol, max_pivots=max_pivots)


def solve_step_lcp(
    model: MechModel, state: SystemState, dt: float, lcp: LcpSolver | None = None
) -> tuple[AssembledLcp, LcpSolution]:
    """
    Assemble and solve the contact LCP of one step.

    Raises:
        LcpError: If the solver does not return a solved status
    """
    assembled = assemble_lcp(model, state, dt)
    solution = (lcp or default_lcp_solver())(assembled.problem)
    if not solution.solved:
        raise LcpError(f"step LCP ended with status {solution.status}")
    return assembled, solution


def _moreau_update(
    model: MechModel, state: SystemState, dt: float, lambda_n: np.ndarray, lambda_t: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    m_inv = mass_inverse(model)
    force = (
        h_vector(model, state.q, state.u)
        + model.normal_dirs @ lambda_n
        + model.tangent_dirs @ lambda_t
    )
    u_end = state.u + m_inv @ force * dt
    return state.q + u_end * dt, u_end


def _rk4_update(
    model: MechModel, state: SystemState, dt: float, lambda_n: np.ndarray, lambda_t: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    m_inv = mass_inverse(model)
    contact = model.normal_dirs @ lambda_n + model.tangent_dirs @ lambda_t

    def rate(q: np.ndarray, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return u, m_inv @ (h_vector(model, q, u) + contact)

    q, u = state.q, state.u
    k1q, k1u = rate(q, u)
    k2q, k2u = rate(q + 0.5 * dt * k1q, u + 0.5 * dt * k1u)
    k3q, k3u = rate(q + 0.5 * dt * k2q, u + 0.5 * dt * k2u)
    k4q, k4u = rate(q + dt * k3q, u + dt * k3u)
    return (
        q + dt / 6.0 * (k1q + 2 * k2q + 2 * k3q + k4q),
        u + dt / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u),
    )


def _step(
    model: MechModel,
    state: SystemState,
    dt: float,
    method: SteppingMethod,
    lcp: LcpSolver | None,
    v_eps: float,
) -> tuple[SystemState, LcpSolution]:
    assembled, solution = solve_step_lcp(model, state, dt, lcp)
    lambda_n, lambda_t, _ = contact_forces(model, assembled, solution)
    update = _moreau_update if method == "conventional" else _rk4_update
    q_end, u_end = update(model, state, dt, lambda_n, lambda_t)
    if not (np.all(np.isfinite(q_end)) and np.all(np.isfinite(u_end))):
        raise ModelError("non-finite state after the update")
    new_state = make_state(
        model, state.t + dt, q_end, u_end, lambda_n, lambda_t, mu=assembled.mu, v_eps=v_eps
    )
    return new_state, solution


def step_conventional(
    model: MechModel,
    state: SystemState,
    dt: float,
    lcp: LcpSolver | None = None,
    v_eps: float = 1e-6,
) -> SystemState:
    """
    One semi-implicit Moreau step.

    ``u_E = u_A + M^-1 (h dt + W_N Lambda_N + W_T Lambda_T)`` and
    ``q_E = q_A + u_E dt``. The returned state records the step-average
    contact forces.

    Raises:
        LcpError: If the step LCP is not solved
    """
    return _step(model, state, dt, "conventional", lcp, v_eps)[0]


def step_rk4_lcp(
    model: MechModel,
    state: SystemState,
    dt: float,
    lcp: LcpSolver | None = None,
    v_eps: float = 1e-6,
) -> SystemState:
    """One RK4 step with the contact forces of the step LCP held fixed."""
    return _step(model, state, dt, "rk4", lcp, v_eps)[0]


def step_count(t0: float, t_end: float, dt: float) -> int:
    """Whole steps of ``dt`` that fit between ``t0`` and ``t_end``."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    if t_end < t0:
        raise ValueError(f"t_end={t_end} is before the initial time {t0}")
    return int(np.floor((t_end - t0) / dt + 1e-9))


def simulate(
    model: MechModel,
    initial: SystemState,
    t_end: float,
    dt: float,
    method: SteppingMethod = "conventional",
    lcp: LcpSolver | None = None,
    v_eps: float = 1e-6,
) -> Trajectory:
    """
    Integrate ``model`` from ``initial`` up to ``t_end`` with a fixed step.

    Raises:
        SteppingError: If a step fails; the cause is chained
    """
    n_steps = step_count(initial.t, t_end, dt)
    tag = "conventional_lcp" if method == "conventional" else "rk4_lcp"
    logger.info("%s: %d steps of dt=%g on %s", tag, n_steps, dt, model.name)

    diagnostics = RunDiagnostics()
    states = [initial]
    state = initial
    for k in range(n_steps):
        try:
            state, solution = _step(model, state, dt, method, lcp, v_eps)
        except LcpError as e:
            raise SteppingError(str(e), k, state.t, "lcp") from e
        except (ModelError, np.linalg.LinAlgError) as e:
            raise SteppingError(str(e), k, state.t, "dynamics") from e
        diagnostics.lcp_iterations += solution.iterations
        state = state.model_copy(update={"t": initial.t + (k + 1) * dt})
        states.append(state)
        logger.debug("%s step %d: regimes %s", tag, k, [r.name for r in state.regime])

    return Trajectory(method_tag=tag, dt=dt, states=states, diagnostics=diagnostics)
