"""Friction laws, contact LCP assembly and linearized stability.

The step LCP is posed for the end-of-step quantities. For rigid and spring
contact the unknowns are ``x = dt * (Lambda_N, Lambda_L, gamma_R)`` with
complements ``y = (g_N^E or Omega_N^E, dt gamma_L, dt Lambda_R)``, where
``Lambda = lambda dt`` and friction is split as ``Lambda_T = mu Lambda_N -
Lambda_L`` and ``gamma_T = gamma_R - gamma_L``.
"""

import numpy as np
import scipy.linalg
from scipy.optimize import bisect

from friction_pinn.logging.logging import get_logger
from friction_pinn.models.lcp import LcpProblem, LcpSolution
from friction_pinn.models.mechanics import (
    AssembledLcp,
    EigenSweep,
    FrictionLaw,
    MechModel,
    Regime,
    SystemState,
)

logger = get_logger(__name__)

MERGE_RTOL = 1e-6


class ModelError(Exception):
    """Raised when a mechanical model does not fit the requested operation."""

    pass


def friction_coefficient(law: FrictionLaw, v_rel: float) -> float:
    """
    Friction coefficient at relative sliding velocity ``v_rel``.

    Example:
        >>> round(friction_coefficient(FrictionLaw(mu_s=0.1, delta=10.0), 1.0), 7)
        0.0090909
    """
    speed = abs(float(v_rel))
    match law.kind:
        case "rational":
            return law.mu_s / (1.0 + law.delta * speed)
        case "exponential":
            base = law.mu_s if law.printed_form else law.dynamic
            return base + (law.mu_s - law.dynamic) * float(np.exp(-law.alpha * speed))
        case "constant":
            return law.mu_s
    raise ValueError(f"unknown friction law {law.kind!r}")


def friction_coefficients(model: MechModel, gamma_t: np.ndarray) -> np.ndarray:
    """Per-contact friction coefficient at the given relative velocities."""
    return np.array(
        [friction_coefficient(model.friction_law(k), g) for k, g in enumerate(gamma_t)]
    )


def mass_inverse(model: MechModel) -> np.ndarray:
    """
    Raises:
        ModelError: If the mass matrix is singular
    """
    try:
        return scipy.linalg.inv(model.mass)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise ModelError(f"singular mass matrix in model {model.name!r}") from e


def h_vector(model: MechModel, q: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Smooth generalized force ``h = -C_s u - K_s q + f_e``."""
    return -model.damping @ u - model.stiffness @ q + model.external_force


def contact_kinematics(
    model: MechModel, q: np.ndarray, u: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Normal gaps ``g_N`` and relative tangential velocities ``gamma_T``."""
    gap = model.normal_dirs.T @ q + model.gap_offset
    gamma_t = model.tangent_dirs.T @ u + model.tangent_drift
    return gap, gamma_t


def _assemble(model: MechModel, state: SystemState, dt: float, spring: bool) -> AssembledLcp:
    if dt <= 0:
        raise ValueError("dt must be positive")
    m_inv = mass_inverse(model)
    w_n, w_t = model.normal_dirs, model.tangent_dirs
    c = model.n_contacts
    eye = np.eye(c)
    zero = np.zeros((c, c))

    g_nn = w_n.T @ m_inv @ w_n
    g_nt = w_n.T @ m_inv @ w_t
    g_tn = w_t.T @ m_inv @ w_n
    g_tt = w_t.T @ m_inv @ w_t
    h = h_vector(model, state.q, state.u)
    gap, gamma_t = contact_kinematics(model, state.q, state.u)
    mu_values = friction_coefficients(model, gamma_t)
    mu = np.diag(mu_values)

    if model.prescribed_normal:
        impulse_n = model.normal_force * dt
        A = np.block([[g_tt, eye], [-eye, zero]])
        b = np.concatenate(
            [
                -((g_tn + g_tt @ mu) @ impulse_n + gamma_t + w_t.T @ m_inv @ h * dt) * dt,
                2.0 * mu_values * impulse_n * dt,
            ]
        )
        return AssembledLcp(
            problem=LcpProblem(A=A, b=b), layout="prescribed_normal", mu=mu_values, dt=dt
        )

    normal_row = [g_nn + g_nt @ mu, -g_nt, zero]
    b_n = gap + w_n.T @ state.u * dt + w_n.T @ m_inv @ h * dt**2 + model.normal_drift * dt
    if spring:
        k_c = np.diag(model.contact_stiffness)
        normal_row = [eye / dt**2 + k_c @ normal_row[0], k_c @ normal_row[1], zero]
        b_n = k_c @ b_n
    A = np.block(
        [
            normal_row,
            [-(g_tn + g_tt @ mu), g_tt, eye],
            [2.0 * mu, -eye, zero],
        ]
    )
    b = np.concatenate([b_n, -gamma_t * dt - w_t.T @ m_inv @ h * dt**2, np.zeros(c)])
    return AssembledLcp(
        problem=LcpProblem(A=A, b=b),
        layout="spring" if spring else "rigid",
        mu=mu_values,
        dt=dt,
    )


def assemble_rigid_lcp(model: MechModel, state: SystemState, dt: float) -> AssembledLcp:
    """
    Rigid-contact step LCP, or the reduced two-block form when the normal
    forces are prescribed.

    Raises:
        ModelError: If the model uses spring contact or its mass is singular
    """
    if model.contact_type != "rigid":
        raise ModelError(f"model {model.name!r} uses {model.contact_type} contact")
    return _assemble(model, state, dt, spring=False)


def assemble_spring_lcp(model: MechModel, state: SystemState, dt: float) -> AssembledLcp:
    """
    Spring-contact step LCP; the first block row complements
    ``Omega_N = k_c g_N + lambda_N`` with ``lambda_N``.

    Raises:
        ModelError: If the model uses rigid contact or its mass is singular
    """
    if model.contact_type != "spring":
        raise ModelError(f"model {model.name!r} uses {model.contact_type} contact")
    return _assemble(model, state, dt, spring=True)


def assemble_lcp(model: MechModel, state: SystemState, dt: float) -> AssembledLcp:
    if model.contact_type == "spring":
        return assemble_spring_lcp(model, state, dt)
    return assemble_rigid_lcp(model, state, dt)


def contact_forces(
    model: MechModel, assembled: AssembledLcp, solution: LcpSolution
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Recover ``(lambda_N, lambda_T, gamma_T)`` from a step LCP solution.

    Forces are step averages (impulse / dt); ``gamma_T`` is the end-of-step
    relative velocity implied by the LCP. ``lambda_L`` is clamped into
    ``[0, 2 mu lambda_N]`` so that ``|lambda_T| <= mu lambda_N`` holds exactly.
    """
    dt = assembled.dt
    c = model.n_contacts
    x, y = solution.x / dt, solution.y / dt
    if assembled.layout == "prescribed_normal":
        lambda_n = model.normal_force.copy()
        lambda_l, gamma_r, gamma_l = x[:c] / dt, x[c:], y[:c]
    else:
        lambda_n = np.maximum(x[:c], 0.0) / dt
        lambda_l, gamma_r, gamma_l = x[c : 2 * c] / dt, x[2 * c :], y[c : 2 * c]
    bound = assembled.mu * lambda_n
    lambda_l = np.clip(lambda_l, 0.0, 2.0 * bound)
    return lambda_n, bound - lambda_l, gamma_r - gamma_l


def project_to_stick(model: MechModel, u: np.ndarray, sticking: np.ndarray) -> np.ndarray:
    """
    Mass-weighted projection of ``u`` onto ``gamma_T = 0`` at the sticking
    contacts; the other contacts are left free.
    """
    index = np.flatnonzero(sticking)
    if index.size == 0:
        return u
    m_inv = mass_inverse(model)
    w_s = model.tangent_dirs[:, index]
    gamma = w_s.T @ u + model.tangent_drift[index]
    return u - m_inv @ w_s @ np.linalg.solve(w_s.T @ m_inv @ w_s, gamma)


def classify_regimes(
    model: MechModel,
    lambda_n: np.ndarray,
    lambda_t: np.ndarray,
    gamma_t: np.ndarray,
    mu: np.ndarray,
    v_eps: float = 1e-6,
    force_tol: float = 1e-9,
) -> list[Regime]:
    """
    Flag each contact as separated, stick or slip.

    Separated needs a vanishing normal force that is not prescribed; stick
    needs ``|gamma_T| <= v_eps`` or a friction force strictly inside the cone.
    """
    scale = max(1.0, float(np.max(np.abs(model.external_force))))
    if model.normal_force is not None:
        scale = max(scale, float(np.max(model.normal_force)))
    tol = force_tol * scale
    regimes = []
    for k in range(model.n_contacts):
        if not model.prescribed_normal and lambda_n[k] <= tol:
            regimes.append(Regime.SEPARATED)
        elif abs(gamma_t[k]) <= v_eps or abs(lambda_t[k]) < mu[k] * lambda_n[k] - tol:
            regimes.append(Regime.STICK)
        else:
            regimes.append(Regime.SLIP)
    return regimes


def make_state(
    model: MechModel,
    t: float,
    q: np.ndarray,
    u: np.ndarray,
    lambda_n: np.ndarray | None = None,
    lambda_t: np.ndarray | None = None,
    mu: np.ndarray | None = None,
    v_eps: float = 1e-6,
) -> SystemState:
    """
    Build a state, deriving gaps, relative velocities and regimes.

    Without forces the contact is treated as force-free: prescribed normal
    forces are filled in, and the regime follows from the kinematics alone.
    """
    q = np.asarray(q, dtype=float)
    u = np.asarray(u, dtype=float)
    gap, gamma_t = contact_kinematics(model, q, u)
    if lambda_n is None:
        if model.normal_force is not None:
            lambda_n = model.normal_force.copy()
        elif model.contact_type == "spring":
            lambda_n = np.maximum(-model.contact_stiffness * gap, 0.0)
        else:
            lambda_n = np.zeros(model.n_contacts)
    if lambda_t is None:
        lambda_t = np.zeros(model.n_contacts)
    if mu is None:
        mu = friction_coefficients(model, gamma_t)
    regime = classify_regimes(model, lambda_n, lambda_t, gamma_t, mu, v_eps=v_eps)
    return SystemState(
        t=t,
        q=q,
        u=u,
        lambda_n=lambda_n,
        lambda_t=lambda_t,
        gap=gap,
        gamma_t=gamma_t,
        regime=regime,
    )


def effective_stiffness(model: MechModel, mu: float) -> np.ndarray:
    """
    Stiffness of the steadily sliding spring-contact system.

    ``K_s + W_N k_c W_N^T + mu W_T diag(s k_c) W_N^T`` where ``s`` is the
    sliding direction of the surface (sign of ``-w_T``).

    Raises:
        ModelError: If the model does not use spring contact
    """
    if model.contact_type != "spring":
        raise ModelError("stability analysis needs spring contact")
    direction = np.sign(-model.tangent_drift)
    k_c = np.diag(model.contact_stiffness)
    coupling = np.diag(direction * mu * model.contact_stiffness)
    return (
        model.stiffness
        + model.normal_dirs @ k_c @ model.normal_dirs.T
        + model.tangent_dirs @ coupling @ model.normal_dirs.T
    )


def eigen_stability(model: MechModel, mu: float) -> np.ndarray:
    """
    Eigenvalues of the linearized sliding system, sorted by imaginary part.

    The first-order form ``[[0, I], [-M^-1 K_eff, -M^-1 C_s]]`` is used.
    """
    m_inv = mass_inverse(model)
    n = model.n_dof
    system = np.block(
        [
            [np.zeros((n, n)), np.eye(n)],
            [-m_inv @ effective_stiffness(model, mu), -m_inv @ model.damping],
        ]
    )
    eigenvalues = scipy.linalg.eigvals(system)
    return eigenvalues[np.lexsort((eigenvalues.real, eigenvalues.imag))]


def _is_unstable(model: MechModel, mu: float) -> bool:
    eigenvalues = eigen_stability(model, mu)
    scale = max(1.0, float(np.max(np.abs(eigenvalues))))
    return bool(np.max(eigenvalues.real) > 1e-8 * scale)


def critical_friction(model: MechModel, mu_grid: np.ndarray) -> EigenSweep:
    """
    Sweep ``mu`` and bisect the first loss of stability.

    The critical value is refined between the last stable and the first
    unstable grid point; it is ``None`` when the whole grid is stable. The
    merge value is the first grid point where two frequencies agree to
    ``MERGE_RTOL``.

    For the built-in ``model2`` parameters the loss happens at
    ``mu = 61/60``, where the eigenvalues of ``M^-1 K_eff`` turn complex,
    not at 0.83.
    """
    mu_grid = np.asarray(mu_grid, dtype=float)
    max_real, frequencies = [], []
    critical = None
    merge = None
    for i, mu in enumerate(mu_grid):
        eigenvalues = eigen_stability(model, float(mu))
        max_real.append(float(np.max(eigenvalues.real)))
        frequencies.append(sorted(float(w) for w in eigenvalues.imag if w > 0))
        gaps = np.diff(frequencies[-1])
        if merge is None and np.any(gaps <= MERGE_RTOL * max(frequencies[-1], default=0.0)):
            merge = float(mu)
        if critical is None and _is_unstable(model, float(mu)):
            if i == 0:
                critical = float(mu)
            else:
                critical = float(
                    bisect(
                        lambda m: 1.0 if _is_unstable(model, m) else -1.0,
                        float(mu_grid[i - 1]),
                        float(mu),
                        xtol=1e-10,
                    )
                )
            logger.debug("stability lost at mu=%.6f", critical)
    return EigenSweep(
        mu=mu_grid.tolist(),
        max_real=max_real,
        frequencies=frequencies,
        critical_mu=critical,
        merge_mu=merge,
    )
