import numpy as np
import pytest

from friction_pinn.models.network import Fnn
from friction_pinn.nn.lbfgs import TrainingDivergedError, minimize_lbfgs, train_lbfgs
from friction_pinn.nn.network import LossFunction, flatten_parameters, init_network


def _rosenbrock(theta: np.ndarray) -> tuple[float, np.ndarray]:
    x, y = theta
    value = (1 - x) ** 2 + 100 * (y - x**2) ** 2
    grad = np.array([-2 * (1 - x) - 400 * x * (y - x**2), 200 * (y - x**2)])
    return float(value), grad


def _target_loss(target: np.ndarray) -> LossFunction:
    def loss(out: np.ndarray) -> tuple[float, np.ndarray]:
        diff = out - target
        return float(diff @ diff), 2.0 * diff

    return loss


def test_single_parameter_quadratic() -> None:
    """loss = (w - 3)^2"""
    net = Fnn(layer_widths=[1, 1], weights=[[[0.0]]], biases=[])
    trained, report = train_lbfgs(net, _target_loss(np.array([3.0])), tol=1e-18)
    assert report.converged
    assert trained.weights[0][0, 0] == pytest.approx(3.0, abs=1e-8)
    assert net.weights[0][0, 0] == 0.0


def test_rosenbrock() -> None:
    theta, report = minimize_lbfgs(_rosenbrock, np.array([-1.2, 1.0]), tol=1e-14, max_iter=1000)
    assert report.converged
    np.testing.assert_allclose(theta, [1.0, 1.0], atol=1e-6)
    assert report.final_loss <= 1e-14


def test_budget_exhausted_reports_best() -> None:
    theta, report = minimize_lbfgs(_rosenbrock, np.array([-1.2, 1.0]), tol=1e-14, max_iter=2)
    assert not report.converged
    assert report.iterations == 2
    assert report.final_loss <= _rosenbrock(np.array([-1.2, 1.0]))[0]
    assert report.final_loss == pytest.approx(_rosenbrock(theta)[0])


def test_small_network_fits_targets() -> None:
    net = init_network([1, 8, 8, 3], seed=0)
    target = np.array([0.5, -1.0, 2.0])
    _, report = train_lbfgs(net, _target_loss(target), tol=1e-12, max_iter=500)
    assert report.converged
    assert report.final_loss <= 1e-12


def test_deterministic_given_seed() -> None:
    net = init_network([1, 6, 2], seed=3)
    loss = _target_loss(np.array([1.0, -2.0]))
    first, _ = train_lbfgs(net, loss, tol=1e-14, seed=5)
    second, _ = train_lbfgs(net, loss, tol=1e-14, seed=5)
    assert flatten_parameters(first).tobytes() == flatten_parameters(second).tobytes()


def test_nonfinite_loss_raises() -> None:
    with pytest.raises(TrainingDivergedError, match="non-finite loss"):
        minimize_lbfgs(lambda t: (float("nan"), np.zeros_like(t)), np.zeros(2), 1e-8, 10)


def test_rejects_nonpositive_tol() -> None:
    with pytest.raises(ValueError, match="tol must be positive"):
        minimize_lbfgs(_rosenbrock, np.zeros(2), tol=0.0, max_iter=10)
