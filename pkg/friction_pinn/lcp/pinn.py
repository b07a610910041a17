"""Network-based LCP solver.

A small network fed with constant inputs is trained so that its rectified
outputs ``(x, y)`` drive :func:`lcp_residual` to zero. Training runs on the
equilibrated problem; the answer is mapped back before it is returned.
"""

import numpy as np

from friction_pinn.lcp.pivoting import LcpError, lcp_residual
from friction_pinn.lcp.scaling import equilibrate
from friction_pinn.logging.logging import get_logger
from friction_pinn.models.lcp import LcpPinnConfig, LcpProblem, LcpSolution, LcpStatus
from friction_pinn.models.network import ActivationKind, Fnn, TrainReport
from friction_pinn.nn.lbfgs import TrainingDivergedError, train_lbfgs
from friction_pinn.nn.network import (
    LossFunction,
    activate,
    activation_derivative,
    forward,
    init_network,
)

logger = get_logger(__name__)


class LcpNotConvergedError(LcpError):
    """Raised when the LCP network stays above tolerance after every restart."""

    def __init__(self, message: str, solution: LcpSolution) -> None:
        super().__init__(message)
        self.solution = solution


def lcp_loss(problem: LcpProblem, output_activation: ActivationKind) -> LossFunction:
    """Residual loss of the rectified network outputs, with its output gradient."""
    A, b = problem.A, problem.b
    n = problem.size

    def loss(out: np.ndarray) -> tuple[float, np.ndarray]:
        g = activate(output_activation, out)
        x, y = g[:n], g[n:]
        f = y - A @ x - b
        r = x * y
        d_x = 2.0 * (r * y - A.T @ f) / n
        d_y = 2.0 * (f + r * x) / n
        d_g = np.concatenate([d_x, d_y])
        return float((f @ f + r @ r) / n), d_g * activation_derivative(output_activation, out)

    return loss


def train_lcp_pinn(
    problem: LcpProblem, cfg: LcpPinnConfig | None = None, initial_net: Fnn | None = None
) -> tuple[LcpSolution, Fnn]:
    """
    Solve an LCP by training a network and return the network as well.

    ``initial_net`` (a network from a previous solve of a same-sized
    problem) is tried first; reseeded cold starts follow on failure.

    Raises:
        LcpNotConvergedError: If no attempt reaches ``cfg.tol``; the best
            solution found is attached to the error
    """
    cfg = cfg or LcpPinnConfig()
    n = problem.size
    scaled, scaling = equilibrate(problem)
    loss = lcp_loss(scaled, cfg.output_activation)
    inputs = np.asarray(cfg.input_values, dtype=float)
    widths = [inputs.size, *cfg.hidden_layers, 2 * n]

    starts: list[tuple[Fnn, int]] = []
    if initial_net is not None and initial_net.layer_widths == widths:
        starts.append((initial_net, cfg.seed))
    for k in range(cfg.max_restarts + 1):
        cold = init_network(widths, cfg.activation, seed=cfg.seed + k, nonnegative_output=True)
        starts.append((cold, cfg.seed + k))

    best: tuple[Fnn, TrainReport] | None = None
    iterations = 0
    attempt = 0
    for attempt, (start, seed) in enumerate(starts):
        try:
            net, report = train_lbfgs(
                start, loss, tol=cfg.tol, max_iter=cfg.max_iter, seed=seed, inputs=inputs
            )
        except TrainingDivergedError as e:
            logger.warning("LCP network attempt %d diverged: %s", attempt, e)
            continue
        iterations += report.iterations
        if best is None or report.final_loss < best[1].final_loss:
            best = (net, report)
        if report.converged:
            break
        logger.warning(
            "LCP network attempt %d stopped at loss %.3e, restarting", attempt, report.final_loss
        )

    if best is None:
        diverged = TrainReport(final_loss=np.inf, iterations=0, converged=False, grad_norm=0.0)
        best = (starts[-1][0], diverged)
    net, report = best
    out = activate(cfg.output_activation, forward(net, inputs))
    x, y = scaling.unscale(out[:n], out[n:])
    solution = LcpSolution(
        x=x,
        y=y,
        residual=lcp_residual(problem, x, y),
        status=LcpStatus.SOLVED if report.converged else LcpStatus.NOT_CONVERGED,
        iterations=iterations,
        restarts=attempt,
    )
    if not report.converged:
        raise LcpNotConvergedError(
            f"LCP network loss {report.final_loss:.3e} above tol {cfg.tol:g} "
            f"after {attempt + 1} attempts",
            solution,
        )
    return solution, net


def solve_lcp_pinn(problem: LcpProblem, cfg: LcpPinnConfig | None = None) -> LcpSolution:
    """
    Solve an LCP with a physics-informed network.

    Example:
        >>> p = LcpProblem(A=[[1.0, 0.0], [0.0, 1.0]], b=[1.0, 1.0])
        >>> solve_lcp_pinn(p).y.round(6).tolist()
        [1.0, 1.0]
    """
    return train_lcp_pinn(problem, cfg)[0]
