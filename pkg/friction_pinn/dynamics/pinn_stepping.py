"""PINN time-stepping on implicit Runge-Kutta collocation.

Each step trains a network that maps the current displacements to the R
stage velocities and the end velocity. The loss asks every one of these
velocities, rebuilt backwards through the IRK formulas from the stage
accelerations, to reproduce the known start velocity. Contact forces at the
stages come from the step LCP: constant for the single and dual schemes,
interpolated from the previous step for the advanced ones.
"""

from pathlib import Path
from typing import NamedTuple

import numpy as np

from friction_pinn.dynamics.contact import (
    ModelError,
    assemble_lcp,
    classify_regimes,
    contact_forces,
    make_state,
    mass_inverse,
    project_to_stick,
)
from friction_pinn.dynamics.irk import interpolate_forces, irk_coefficients
from friction_pinn.dynamics.time_stepping import (
    LcpSolver,
    SteppingError,
    default_lcp_solver,
    solve_step_lcp,
    step_count,
)
from friction_pinn.lcp.pinn import train_lcp_pinn
from friction_pinn.lcp.pivoting import LcpError
from friction_pinn.logging.logging import get_logger
from friction_pinn.models.integration import PinnStepConfig, StageForces
from friction_pinn.models.lcp import LcpSolution
from friction_pinn.models.mechanics import AssembledLcp, MechModel, Regime, SystemState
from friction_pinn.models.network import Fnn, TrainReport
from friction_pinn.models.trajectory import RunDiagnostics, Trajectory
from friction_pinn.nn.io import save_network
from friction_pinn.nn.lbfgs import TrainingDivergedError, train_lbfgs
from friction_pinn.nn.network import LossFunction, forward, init_network

logger = get_logger(__name__)


class PinnStepNotConvergedError(Exception):
    """Raised when a step network stays above tolerance after every restart."""

    def __init__(self, message: str, loss: float) -> None:
        super().__init__(message)
        self.loss = loss


class StepFit(NamedTuple):
    q: np.ndarray
    u: np.ndarray
    net: Fnn
    report: TrainReport
    restarts: int
    cold_start: bool


class _StepProblem:
    """IRK residuals of one step as a function of the raw network outputs."""

    def __init__(
        self, model: MechModel, state: SystemState, dt: float, forces: StageForces, order: int
    ) -> None:
        tableau = irk_coefficients(order)
        if forces.lambda_n.shape != (model.n_contacts, order):
            raise ModelError(
                f"stage forces must be {model.n_contacts}x{order}, got {forces.lambda_n.shape}"
            )
        self.a, self.b = tableau.a, tableau.b
        self.order = order
        self.n = model.n_dof
        self.dt = dt
        self.q, self.u = state.q, state.u
        self.m_inv = mass_inverse(model)
        self.stiffness = model.stiffness
        self.damping = model.damping
        self.drive = (
            model.external_force[:, None]
            + model.normal_dirs @ forces.lambda_n
            + model.tangent_dirs @ forces.lambda_t
        )
        self.scale = max(1.0, float(np.max(np.abs(self.u))))
        self.inputs = self.q / max(1.0, float(np.max(np.abs(self.q))))

    def velocities(self, out: np.ndarray) -> np.ndarray:
        return self.u[:, None] + self.scale * out.reshape(self.n, self.order + 1)

    def accelerations(self, stage_v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        stage_q = self.q[:, None] + self.dt * stage_v @ self.a.T
        force = -self.damping @ stage_v - self.stiffness @ stage_q + self.drive
        return stage_q, self.m_inv @ force

    def loss(self) -> LossFunction:
        a, b, dt = self.a, self.b, self.dt
        norm = self.n * (self.order + 1) * self.scale**2

        def loss(out: np.ndarray) -> tuple[float, np.ndarray]:
            v = self.velocities(out)
            stage_v, end_v = v[:, : self.order], v[:, self.order]
            _, acc = self.accelerations(stage_v)
            res = stage_v - dt * acc @ a.T - self.u[:, None]
            res_end = end_v - dt * acc @ b - self.u
            value = (np.sum(res**2) + res_end @ res_end) / norm

            g = 2.0 * res / norm
            g_end = 2.0 * res_end / norm
            d_acc = -dt * (g @ a + np.outer(g_end, b))
            d_force = self.m_inv.T @ d_acc
            d_q = -self.stiffness.T @ d_force
            d_stage = g - self.damping.T @ d_force + dt * d_q @ a
            d_v = np.hstack([d_stage, g_end[:, None]])
            return float(value), (self.scale * d_v).ravel()

        return loss

    def readout(self, net: Fnn) -> tuple[np.ndarray, np.ndarray]:
        """End-of-step ``(q, u)`` from the stage velocities of ``net``."""
        stage_v = self.velocities(forward(net, self.inputs))[:, : self.order]
        _, acc = self.accelerations(stage_v)
        return self.q + self.dt * stage_v @ self.b, self.u + self.dt * acc @ self.b


def train_step_network(
    model: MechModel,
    state: SystemState,
    dt: float,
    forces: StageForces,
    cfg: PinnStepConfig,
    initial_net: Fnn | None = None,
) -> StepFit:
    """
    Train the step network and read the end-of-step state from it.

    ``initial_net`` is tried first when its shape fits; reseeded cold starts
    follow, up to ``cfg.max_restarts`` of them.

    Raises:
        PinnStepNotConvergedError: If no attempt reaches ``cfg.tol``
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    problem = _StepProblem(model, state, dt, forces, cfg.order)
    loss = problem.loss()
    widths = [model.n_dof, *cfg.hidden_layers, model.n_dof * (cfg.order + 1)]

    starts: list[Fnn] = []
    if initial_net is not None and initial_net.layer_widths == widths:
        starts.append(initial_net)
    warm = bool(starts)
    for k in range(cfg.max_restarts + 1):
        starts.append(init_network(widths, cfg.activation, seed=cfg.seed + k, output_bias=True))
    starts = starts[: cfg.max_restarts + 1]

    best: tuple[Fnn, TrainReport] | None = None
    iterations = 0
    attempt = 0
    for attempt, start in enumerate(starts):
        try:
            net, report = train_lbfgs(
                start,
                loss,
                tol=cfg.tol,
                max_iter=cfg.max_iter,
                seed=cfg.seed + attempt,
                inputs=problem.inputs,
            )
        except TrainingDivergedError as e:
            logger.warning("step network attempt %d diverged: %s", attempt, e)
            continue
        iterations += report.iterations
        if best is None or report.final_loss < best[1].final_loss:
            best = (net, report)
        if report.converged:
            break
        logger.debug("step network attempt %d stopped at loss %.3e", attempt, report.final_loss)

    if best is None or not best[1].converged:
        final_loss = np.inf if best is None else best[1].final_loss
        raise PinnStepNotConvergedError(
            f"step loss {final_loss:.3e} above tol {cfg.tol:g} after {attempt + 1} attempts",
            float(final_loss),
        )
    net, report = best
    q_end, u_end = problem.readout(net)
    return StepFit(
        q=q_end,
        u=u_end,
        net=net,
        report=report.model_copy(update={"iterations": iterations}),
        restarts=attempt,
        cold_start=warm and attempt > 0,
    )


def pinn_step(
    model: MechModel,
    state: SystemState,
    dt: float,
    forces: StageForces,
    cfg: PinnStepConfig,
    initial_net: Fnn | None = None,
    mu: np.ndarray | None = None,
    v_eps: float = 1e-6,
) -> SystemState:
    """
    One PINN step under the given stage forces.

    The returned state records the b-weighted mean of the stage forces.
    """
    fit = train_step_network(model, state, dt, forces, cfg, initial_net)
    b = irk_coefficients(cfg.order).b
    return make_state(
        model,
        state.t + dt,
        fit.q,
        fit.u,
        forces.lambda_n @ b,
        forces.lambda_t @ b,
        mu=mu,
        v_eps=v_eps,
    )


class _StepLcp:
    """Step LCP solved by pivoting or by a warm-started LCP network."""

    def __init__(self, cfg: PinnStepConfig, lcp: LcpSolver, diagnostics: RunDiagnostics) -> None:
        self.cfg = cfg
        self.lcp = lcp
        self.diagnostics = diagnostics
        self.net: Fnn | None = None

    def solve(
        self, model: MechModel, state: SystemState, dt: float
    ) -> tuple[AssembledLcp, LcpSolution]:
        if self.cfg.scheme in ("single", "advanced_single"):
            return solve_step_lcp(model, state, dt, self.lcp)
        assembled = assemble_lcp(model, state, dt)
        initial = self.net if self.cfg.warm_start else None
        solution, self.net = train_lcp_pinn(assembled.problem, self.cfg.lcp, initial)
        self.diagnostics.lcp_restarts += solution.restarts
        return assembled, solution


def pinn_simulate(
    model: MechModel,
    initial: SystemState,
    t_end: float,
    dt: float,
    cfg: PinnStepConfig,
    lcp: LcpSolver | None = None,
    v_eps: float = 1e-6,
    net_path: Path | None = None,
) -> Trajectory:
    """
    Integrate ``model`` with one of the PINN schemes.

    Every step first solves the LCP at the current state (pivoting for the
    single schemes, an LCP network for the dual ones). The advanced schemes
    then interpolate between the previous and the current step forces at the
    IRK nodes; the first step uses the current forces throughout. Contacts
    the step LCP classifies as sticking have their end velocity projected
    back onto ``gamma_T = 0``.

    Args:
        net_path: Where to save the last step network, if anywhere

    Raises:
        SteppingError: If a step fails; the cause is chained
    """
    n_steps = step_count(initial.t, t_end, dt)
    tableau = irk_coefficients(cfg.order)
    logger.info("%s: %d steps of dt=%g on %s", cfg.method_tag, n_steps, dt, model.name)

    diagnostics = RunDiagnostics()
    step_lcp = _StepLcp(cfg, lcp or default_lcp_solver(), diagnostics)
    previous: tuple[np.ndarray, np.ndarray] | None = None
    net: Fnn | None = None
    states = [initial]
    state = initial
    for k in range(n_steps):
        try:
            assembled, solution = step_lcp.solve(model, state, dt)
        except LcpError as e:
            raise SteppingError(str(e), k, state.t, "lcp") from e
        diagnostics.lcp_iterations += solution.iterations
        lambda_n, lambda_t, gamma_t = contact_forces(model, assembled, solution)
        regimes = classify_regimes(model, lambda_n, lambda_t, gamma_t, assembled.mu, v_eps)
        sticking = np.array([r == Regime.STICK for r in regimes])

        if cfg.advanced:
            current = (lambda_n, lambda_t)
            forces = interpolate_forces(previous or current, current, tableau.c)
        else:
            forces = StageForces.constant(lambda_n, lambda_t, cfg.order)
        previous = (lambda_n, lambda_t)

        try:
            fit = train_step_network(
                model, state, dt, forces, cfg, net if cfg.warm_start else None
            )
        except (PinnStepNotConvergedError, ModelError, np.linalg.LinAlgError) as e:
            raise SteppingError(str(e), k, state.t, "dynamics") from e
        net = fit.net
        diagnostics.train_iterations += fit.report.iterations
        diagnostics.step_restarts += fit.restarts
        diagnostics.cold_starts += int(fit.cold_start)

        # contacts the LCP holds in stick end the step on the belt
        u_end = project_to_stick(model, fit.u, sticking)
        state = make_state(
            model,
            initial.t + (k + 1) * dt,
            fit.q,
            u_end,
            lambda_n,
            lambda_t,
            mu=assembled.mu,
            v_eps=v_eps,
        )
        states.append(state)
        logger.debug("%s step %d: loss %.3e", cfg.method_tag, k, fit.report.final_loss)

    if net_path is not None and net is not None:
        save_network(net, net_path)
        logger.info("saved step network to %s", net_path)
    return Trajectory(
        method_tag=cfg.method_tag, dt=dt, states=states, diagnostics=diagnostics
    )
