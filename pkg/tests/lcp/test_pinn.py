import numpy as np
import pytest

from friction_pinn.lcp.pinn import LcpNotConvergedError, solve_lcp_pinn, train_lcp_pinn
from friction_pinn.lcp.pivoting import LcpError, lcp_residual, solve_pivoting
from friction_pinn.models.lcp import LcpPinnConfig, LcpProblem, LcpStatus

TABLE_PROBLEM = LcpProblem(A=[[1.0, -1.0], [-1.0, 0.0]], b=[-0.009, 0.02])


def test_table_problem() -> None:
    """Three hidden layers of five neurons recover the benchmark solution"""
    solution = solve_lcp_pinn(TABLE_PROBLEM)
    assert solution.status == LcpStatus.SOLVED
    np.testing.assert_allclose(solution.x, [0.009, 0.0], atol=1e-6)
    np.testing.assert_allclose(solution.y, [0.0, 0.011], atol=1e-6)
    assert np.all(solution.x >= 0) and np.all(solution.y >= 0)


def test_nonnegative_b() -> None:
    solution = solve_lcp_pinn(LcpProblem(A=np.eye(2), b=[1.0, 1.0]))
    np.testing.assert_allclose(solution.x, [0.0, 0.0], atol=1e-6)
    np.testing.assert_allclose(solution.y, [1.0, 1.0], atol=1e-6)


def test_agrees_with_pivoting() -> None:
    rng = np.random.default_rng(5)
    m = rng.standard_normal((2, 2))
    problem = LcpProblem(A=m @ m.T + 2 * np.eye(2), b=rng.standard_normal(2))
    solution = solve_lcp_pinn(problem)
    reference = solve_pivoting(problem)
    np.testing.assert_allclose(solution.x, reference.x, atol=1e-5)
    np.testing.assert_allclose(solution.y, reference.y, atol=1e-5)


def test_agrees_with_pivoting_on_most_problems() -> None:
    """At least 190 of 200 random positive-definite problems within 1e-4"""
    rng = np.random.default_rng(11)
    cfg = LcpPinnConfig(max_restarts=1)
    agreed = 0
    for _ in range(200):
        m = rng.standard_normal((2, 2))
        problem = LcpProblem(A=m @ m.T + 2 * np.eye(2), b=rng.standard_normal(2))
        reference = solve_pivoting(problem)
        try:
            solution = solve_lcp_pinn(problem, cfg)
        except LcpNotConvergedError:
            continue
        error = max(
            np.max(np.abs(solution.x - reference.x)), np.max(np.abs(solution.y - reference.y))
        )
        agreed += int(error <= 1e-4)
    assert agreed >= 190


def test_returned_residual_matches_problem() -> None:
    solution = solve_lcp_pinn(TABLE_PROBLEM)
    assert solution.residual == pytest.approx(
        lcp_residual(TABLE_PROBLEM, solution.x, solution.y), abs=1e-20
    )


def test_warm_start_reuses_network() -> None:
    _, net = train_lcp_pinn(TABLE_PROBLEM)
    solution, _ = train_lcp_pinn(TABLE_PROBLEM, initial_net=net)
    assert solution.solved
    assert solution.restarts == 0


def test_not_converged_carries_best_solution() -> None:
    """No solution exists, so every attempt stays above tolerance"""
    problem = LcpProblem(A=[[-1.0]], b=[-1.0])
    cfg = LcpPinnConfig(max_iter=20, max_restarts=1)
    with pytest.raises(LcpNotConvergedError) as excinfo:
        solve_lcp_pinn(problem, cfg)
    assert excinfo.value.solution.status == LcpStatus.NOT_CONVERGED
    assert excinfo.value.solution.restarts == 1
    assert isinstance(excinfo.value, LcpError)
