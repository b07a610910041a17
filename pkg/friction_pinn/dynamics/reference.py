"""Event-driven reference solvers for single-contact models.

The motion is split into smooth phases (separated, slipping in one direction,
sticking). Each phase is integrated with an adaptive high-order Runge-Kutta
pair whose terminal events mark the end of the phase; event times are then
refined by bisection on the dense output and integration restarts from the
event state in the next phase. Velocities stay continuous across events.
"""

from typing import Callable, NamedTuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import bisect

from friction_pinn.dynamics.contact import (
    ModelError,
    contact_kinematics,
    friction_coefficient,
    h_vector,
    mass_inverse,
)
from friction_pinn.dynamics.time_stepping import step_count
from friction_pinn.logging.logging import get_logger
from friction_pinn.models.mechanics import MechModel, Regime, SystemState
from friction_pinn.models.trajectory import EventKind, EventRecord, RunDiagnostics, Trajectory

logger = get_logger(__name__)

RTOL = 1e-10
ATOL = 1e-12
MAX_EVENTS = 10_000

EventFunction = Callable[[float, np.ndarray], float]


class EventLocationError(Exception):
    """Raised when an event cannot be bracketed or the event budget runs out."""

    pass


class Phase(NamedTuple):
    regime: Regime
    direction: int = 0  # slip sign of gamma_T


class _Segment(NamedTuple):
    t_start: float
    t_end: float
    solution: Callable[[float], np.ndarray]
    phase: Phase


def _event(fn: EventFunction, direction: int) -> EventFunction:
    def event(t: float, y: np.ndarray) -> float:
        return fn(t, y)

    event.terminal = True  # type: ignore[attr-defined]
    event.direction = direction  # type: ignore[attr-defined]
    return event


class _PhaseSystem:
    """Equations of motion and event functions of a single-contact model."""

    def __init__(self, model: MechModel, event_tol: float) -> None:
        self.model = model
        self.event_tol = event_tol
        self.n = model.n_dof
        self.m_inv = mass_inverse(model)
        self.w_n = model.normal_dirs[:, 0]
        self.w_t = model.tangent_dirs[:, 0]
        self.law = model.friction_law(0)
        self.mu_static = friction_coefficient(self.law, 0.0)
        self.tangent_mass = float(self.w_t @ self.m_inv @ self.w_t)
        if self.tangent_mass <= 0:
            raise ModelError("the contact has no tangential direction")

    def split(self, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return y[: self.n], y[self.n :]

    def gap(self, q: np.ndarray) -> float:
        return float(self.w_n @ q + self.model.gap_offset[0])

    def gamma(self, u: np.ndarray) -> float:
        return float(self.w_t @ u + self.model.tangent_drift[0])

    def normal_force(self, q: np.ndarray) -> float:
        if self.model.normal_force is not None:
            return float(self.model.normal_force[0])
        return float(self.model.contact_stiffness[0] * max(-self.gap(q), 0.0))

    def stick_force(self, q: np.ndarray, u: np.ndarray, lambda_n: float) -> float:
        """Friction force that keeps ``gamma_T`` constant."""
        smooth = h_vector(self.model, q, u) + self.w_n * lambda_n
        return -float(self.w_t @ self.m_inv @ smooth) / self.tangent_mass

    def forces(self, phase: Phase, q: np.ndarray, u: np.ndarray) -> tuple[float, float]:
        if phase.regime == Regime.SEPARATED:
            return 0.0, 0.0
        lambda_n = self.normal_force(q)
        if phase.regime == Regime.STICK:
            return lambda_n, self.stick_force(q, u, lambda_n)
        mu = friction_coefficient(self.law, self.gamma(u))
        return lambda_n, -phase.direction * mu * lambda_n

    def rhs(self, phase: Phase) -> Callable[[float, np.ndarray], np.ndarray]:
        def rhs(t: float, y: np.ndarray) -> np.ndarray:
            q, u = self.split(y)
            lambda_n, lambda_t = self.forces(phase, q, u)
            force = h_vector(self.model, q, u) + self.w_n * lambda_n + self.w_t * lambda_t
            return np.concatenate([u, self.m_inv @ force])

        return rhs

    def events(self, phase: Phase) -> list[tuple[EventFunction, EventKind | None]]:
        """Terminal events of a phase with the transition each one stands for."""
        gap = _event(lambda t, y: self.gap(self.split(y)[0]), +1)
        spring = self.model.contact_type == "spring"
        match phase.regime:
            case Regime.SEPARATED:
                reattach = _event(lambda t, y: self.gap(self.split(y)[0]), -1)
                return [(reattach, EventKind.REATTACHMENT)]
            case Regime.SLIP:
                events = [
                    (_event(lambda t, y: self.gamma(self.split(y)[1]), -phase.direction), None)
                ]
            case _:

                def margin(t: float, y: np.ndarray) -> float:
                    q, u = self.split(y)
                    lambda_n, lambda_t = self.forces(phase, q, u)
                    return self.mu_static * lambda_n - abs(lambda_t)

                events = [(_event(margin, -1), EventKind.STICK_TO_SLIP)]
        if spring:
            events.append((gap, EventKind.SEPARATION))
        return events

    def contact_phase(self, q: np.ndarray, u: np.ndarray, velocity_tol: float) -> Phase:
        """Phase of a state in contact; stick when it is at rest and can hold."""
        gamma = self.gamma(u)
        if abs(gamma) > velocity_tol:
            return Phase(Regime.SLIP, int(np.sign(gamma)))
        lambda_n = self.normal_force(q)
        lambda_stick = self.stick_force(q, u, lambda_n)
        if abs(lambda_stick) <= self.mu_static * lambda_n:
            return Phase(Regime.STICK)
        return Phase(Regime.SLIP, -int(np.sign(lambda_stick)))

    def initial_phase(self, q: np.ndarray, u: np.ndarray, velocity_tol: float) -> Phase:
        if self.model.contact_type == "spring" and self.gap(q) > 0:
            return Phase(Regime.SEPARATED)
        return self.contact_phase(q, u, velocity_tol)

    def project_to_stick(self, u: np.ndarray) -> np.ndarray:
        """Remove the residual relative velocity along the tangent."""
        return u - self.m_inv @ self.w_t * (self.gamma(u) / self.tangent_mass)


def _refine(
    fn: EventFunction,
    solution: Callable[[float], np.ndarray],
    lo: float,
    t_event: float,
    tol: float,
) -> tuple[float, float]:
    """Bisect the event on the dense output; returns the time and bracket width."""
    hi = t_event + tol

    def f(t: float) -> float:
        return fn(t, solution(t))

    f_lo, f_hi = f(lo), f(hi)
    if np.sign(f_lo) != np.sign(f_hi) and f_lo != 0.0:
        return float(bisect(f, lo, hi, xtol=tol)), tol
    if abs(f(t_event)) <= 1e-9 * (1.0 + abs(f_lo)):
        return t_event, 0.0
    raise EventLocationError(f"event near t={t_event:.12g} could not be bracketed")


def _integrate(
    system: _PhaseSystem,
    t0: float,
    y0: np.ndarray,
    t_end: float,
    event_tol: float,
    velocity_tol: float,
    max_events: int,
) -> tuple[list[_Segment], list[EventRecord]]:
    q0, u0 = system.split(y0)
    phase = system.initial_phase(q0, u0, velocity_tol)
    if phase.regime == Regime.STICK:
        y0 = np.concatenate([q0, system.project_to_stick(u0)])

    segments: list[_Segment] = []
    records: list[EventRecord] = []
    t, y = t0, y0
    transitions = 0
    while t < t_end:
        events = system.events(phase)
        sol = solve_ivp(
            system.rhs(phase),
            (t, t_end),
            y,
            method="DOP853",
            rtol=RTOL,
            atol=ATOL,
            dense_output=True,
            events=[fn for fn, _ in events],
        )
        if sol.status == -1:
            raise EventLocationError(f"integration failed at t={t:.12g}: {sol.message}")
        if sol.status == 0:
            segments.append(_Segment(t, t_end, sol.sol, phase))
            break

        fired = next(i for i, times in enumerate(sol.t_events) if len(times))
        fn, kind = events[fired]
        lo = float(sol.t[-2]) if len(sol.t) > 1 else t
        t_event, width = _refine(fn, sol.sol, lo, float(sol.t_events[fired][0]), event_tol)
        t_event = min(max(t_event, t), t_end)
        segments.append(_Segment(t, t_event, sol.sol, phase))

        q, u = system.split(sol.sol(t_event))
        match kind:
            case EventKind.SEPARATION:
                phase = Phase(Regime.SEPARATED)
            case EventKind.STICK_TO_SLIP:
                lambda_n = system.normal_force(q)
                lambda_stick = system.stick_force(q, u, lambda_n)
                phase = Phase(Regime.SLIP, -int(np.sign(lambda_stick)) or 1)
            case EventKind.REATTACHMENT:
                phase = system.contact_phase(q, u, velocity_tol)
            case _:
                # gamma_T has just reached zero
                previous = phase
                phase = system.contact_phase(q, u, velocity_tol=np.inf)
                if phase.regime == Regime.STICK:
                    kind = EventKind.SLIP_TO_STICK
                elif phase.direction != previous.direction:
                    kind = EventKind.SLIP_REVERSAL
        if phase.regime == Regime.STICK:
            u = system.project_to_stick(u)
        if kind is not None:
            records.append(EventRecord(t_event=t_event, kind=kind, bracket_width=width))
            logger.debug("%s at t=%.10f", kind, t_event)
        transitions += 1
        if transitions > max_events:
            raise EventLocationError(f"more than {max_events} events before t={t_event:.6g}")
        t, y = t_event, np.concatenate([q, u])
    return segments, records


def _sample(
    system: _PhaseSystem, segments: list[_Segment], times: np.ndarray
) -> list[SystemState]:
    model = system.model
    states = []
    index = 0
    for t in times:
        while index < len(segments) - 1 and t > segments[index].t_end:
            index += 1
        segment = segments[index]
        q, u = system.split(segment.solution(t))
        lambda_n, lambda_t = system.forces(segment.phase, q, u)
        gap, gamma_t = contact_kinematics(model, q, u)
        states.append(
            SystemState(
                t=float(t),
                q=q,
                u=u,
                lambda_n=[lambda_n],
                lambda_t=[lambda_t],
                gap=gap,
                gamma_t=gamma_t,
                regime=[segment.phase.regime],
            )
        )
    return states


def event_driven_simulate(
    model: MechModel,
    initial: SystemState,
    t_end: float,
    event_tol: float = 1e-10,
    sample_dt: float = 1e-3,
    method_tag: str = "event_driven",
    max_events: int = MAX_EVENTS,
) -> tuple[Trajectory, list[EventRecord]]:
    """
    Phase-switched integration of a single-contact model.

    Raises:
        EventLocationError: If an event cannot be bracketed or there are
            more than ``max_events`` of them
        ModelError: If the model has more than one contact
    """
    if model.n_contacts != 1:
        raise ModelError("event-driven integration supports a single contact")
    if event_tol <= 0:
        raise ValueError("event_tol must be positive")

    system = _PhaseSystem(model, event_tol)
    y0 = np.concatenate([initial.q, initial.u])
    times = initial.t + sample_dt * np.arange(step_count(initial.t, t_end, sample_dt) + 1)
    if times[-1] > initial.t:
        segments, records = _integrate(
            system, initial.t, y0, float(times[-1]), event_tol, 1e-9, max_events
        )
    else:
        phase = system.initial_phase(initial.q, initial.u, 1e-9)
        segments = [_Segment(initial.t, initial.t, lambda t: y0, phase)]
        records = []
    logger.info("%s: %d events up to t=%g", method_tag, len(records), times[-1])

    trajectory = Trajectory(
        method_tag=method_tag,
        dt=sample_dt,
        states=_sample(system, segments, times),
        diagnostics=RunDiagnostics(events=len(records)),
    )
    return trajectory, records


def switching_simulate_1dof(
    model: MechModel,
    initial: SystemState,
    t_end: float,
    event_tol: float = 1e-10,
    sample_dt: float = 1e-3,
) -> tuple[Trajectory, list[EventRecord]]:
    """
    Switching-method oracle for a one-DoF model with prescribed normal force.

    Raises:
        ModelError: If the model is not one-DoF with a prescribed normal force
    """
    if model.n_dof != 1 or not model.prescribed_normal:
        raise ModelError("the switching oracle needs a one-DoF model with prescribed normal force")
    return event_driven_simulate(model, initial, t_end, event_tol, sample_dt, "switching")


def root_shooting_simulate_2dof(
    model: MechModel,
    initial: SystemState,
    t_end: float,
    event_tol: float = 1e-10,
    sample_dt: float = 1e-3,
) -> tuple[Trajectory, list[EventRecord]]:
    """
    Root-shooting oracle for a spring-contact model with separation and
    reattachment.

    Raises:
        ModelError: If the model does not use spring contact
    """
    if model.contact_type != "spring":
        raise ModelError("the root-shooting oracle needs spring contact")
    return event_driven_simulate(model, initial, t_end, event_tol, sample_dt, "root_shooting")
