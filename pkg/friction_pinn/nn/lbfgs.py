"""Full-batch L-BFGS over the flat parameter vector of an :class:`Fnn`."""

import warnings
from collections import deque
from typing import Callable

import numpy as np
from scipy.optimize import line_search

from friction_pinn.logging.logging import get_logger
from friction_pinn.models.network import Fnn, TrainReport
from friction_pinn.nn.network import (
    LossFunction,
    flat_objective,
    flatten_parameters,
    with_parameters,
)

logger = get_logger(__name__)

Objective = Callable[[np.ndarray], tuple[float, np.ndarray]]

_WOLFE_C1 = 1e-4
_WOLFE_C2 = 0.9
_PERTURBATION = 1e-3


class TrainingDivergedError(Exception):
    """Raised when the loss or its gradient becomes non-finite."""

    pass


def _cached(objective: Objective) -> Objective:
    cache: dict[bytes, tuple[float, np.ndarray]] = {}

    def evaluate(theta: np.ndarray) -> tuple[float, np.ndarray]:
        key = np.ascontiguousarray(theta).tobytes()
        if key not in cache:
            value, grad = objective(theta)
            if not (np.isfinite(value) and np.all(np.isfinite(grad))):
                raise TrainingDivergedError(f"non-finite loss {value!r} during line search")
            if len(cache) > 64:
                cache.clear()
            cache[key] = (value, grad)
        return cache[key]

    return evaluate


def _two_loop(g: np.ndarray, s_hist: deque[np.ndarray], y_hist: deque[np.ndarray]) -> np.ndarray:
    q = g.copy()
    history = []
    for s, y in zip(reversed(s_hist), reversed(y_hist)):
        rho = 1.0 / (y @ s)
        a = rho * (s @ q)
        q -= a * y
        history.append((rho, a, s, y))
    if s_hist:
        q *= (s_hist[-1] @ y_hist[-1]) / (y_hist[-1] @ y_hist[-1])
    for rho, a, s, y in reversed(history):
        q += s * (a - rho * (y @ q))
    return -q


def _wolfe_step(
    evaluate: Objective, theta: np.ndarray, direction: np.ndarray, f: float, g: np.ndarray
) -> tuple[np.ndarray, float, np.ndarray] | None:
    if not g @ direction < 0:
        return None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        alpha, *_ = line_search(
            lambda t: evaluate(t)[0],
            lambda t: evaluate(t)[1],
            theta,
            direction,
            gfk=g,
            old_fval=f,
            c1=_WOLFE_C1,
            c2=_WOLFE_C2,
        )
    if alpha is None:
        return None
    theta_new = theta + alpha * direction
    f_new, g_new = evaluate(theta_new)
    if f_new > f:
        return None
    return theta_new, f_new, g_new


def minimize_lbfgs(
    objective: Objective,
    theta0: np.ndarray,
    tol: float,
    max_iter: int,
    seed: int = 0,
    memory: int = 10,
) -> tuple[np.ndarray, TrainReport]:
    """
    Minimize ``objective`` from ``theta0`` until the loss is at most ``tol``.

    Each iteration takes a strong-Wolfe step along the two-loop direction. If
    that search fails the memory is dropped and steepest descent is tried. If
    both fail, the parameters are perturbed once by a seeded random vector.

    Raises:
        TrainingDivergedError: If a non-finite loss is met
    """
    if tol <= 0:
        raise ValueError("tol must be positive")

    evaluate = _cached(objective)
    rng = np.random.default_rng(seed)
    theta = np.array(theta0, dtype=float)
    f, g = evaluate(theta)
    best = (f, theta, g)
    s_hist: deque[np.ndarray] = deque(maxlen=memory)
    y_hist: deque[np.ndarray] = deque(maxlen=memory)
    perturbed = False
    iterations = 0

    while iterations < max_iter and f > tol:
        iterations += 1
        step = _wolfe_step(evaluate, theta, _two_loop(g, s_hist, y_hist), f, g)
        if step is None and s_hist:
            s_hist.clear()
            y_hist.clear()
            step = _wolfe_step(evaluate, theta, -g, f, g)
        if step is None:
            if perturbed or not np.any(g):
                logger.debug("line search stalled at loss %.3e", f)
                break
            perturbed = True
            scale = _PERTURBATION * max(float(np.sqrt(np.mean(theta**2))), 1.0)
            theta = theta + scale * rng.standard_normal(theta.shape)
            f, g = evaluate(theta)
            s_hist.clear()
            y_hist.clear()
            continue

        theta_new, f_new, g_new = step
        s, y = theta_new - theta, g_new - g
        if s @ y > 1e-12 * (y @ y):
            s_hist.append(s)
            y_hist.append(y)
        theta, f, g = theta_new, f_new, g_new
        if f < best[0]:
            best = (f, theta, g)

    f, theta, g = best
    report = TrainReport(
        final_loss=max(f, 0.0),
        iterations=iterations,
        converged=f <= tol,
        grad_norm=float(np.linalg.norm(g)),
    )
    return theta, report


def train_lbfgs(
    net: Fnn,
    loss: LossFunction,
    tol: float = 1e-10,
    max_iter: int = 500,
    seed: int = 0,
    inputs: np.ndarray | None = None,
    memory: int = 10,
) -> tuple[Fnn, TrainReport]:
    """
    Train ``net`` on a loss of its outputs for one input vector.

    Args:
        net: Starting network (left untouched)
        loss: Maps outputs to ``(loss, dloss/doutputs)``
        tol: Target loss
        max_iter: Iteration budget
        seed: Seed of the one-time stall perturbation
        inputs: Network input, ones when omitted

    Returns:
        The best network found and its TrainReport; ``converged`` is false
        when the loss stayed above ``tol``
    """
    x = np.ones(net.input_width) if inputs is None else np.asarray(inputs, dtype=float)
    theta, report = minimize_lbfgs(
        flat_objective(net, loss, x),
        flatten_parameters(net),
        tol=tol,
        max_iter=max_iter,
        seed=seed,
        memory=memory,
    )
    logger.debug(
        "L-BFGS: loss %.3e after %d iterations (converged=%s)",
        report.final_loss,
        report.iterations,
        report.converged,
    )
    return with_parameters(net, theta), report
