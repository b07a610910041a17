import numpy as np
import pytest

from friction_pinn.lcp.pivoting import (
    LcpShapeError,
    is_complementary,
    lcp_residual,
    solve_enumeration,
    solve_pivoting,
)
from friction_pinn.models.lcp import LcpProblem, LcpStatus

TABLE_PROBLEM = LcpProblem(A=[[1.0, -1.0], [-1.0, 0.0]], b=[-0.009, 0.02])


def _random_pd_problem(rng: np.random.Generator, n: int) -> LcpProblem:
    m = rng.standard_normal((n, n))
    return LcpProblem(A=m @ m.T + n * np.eye(n), b=rng.standard_normal(n))


def test_table_problem() -> None:
    """Two-contact benchmark problem"""
    solution = solve_pivoting(TABLE_PROBLEM)
    assert solution.status == LcpStatus.SOLVED
    np.testing.assert_allclose(solution.x, [0.009, 0.0], atol=1e-12)
    np.testing.assert_allclose(solution.y, [0.0, 0.011], atol=1e-12)
    assert solution.residual == pytest.approx(0.0, abs=1e-20)


def test_nonnegative_b_gives_zero_solution() -> None:
    solution = solve_pivoting(LcpProblem(A=np.eye(2), b=[1.0, 1.0]))
    assert solution.solved
    np.testing.assert_array_equal(solution.x, [0.0, 0.0])
    np.testing.assert_array_equal(solution.y, [1.0, 1.0])
    assert solution.iterations == 0


def test_identity_with_negative_b() -> None:
    solution = solve_pivoting(LcpProblem(A=np.eye(2), b=[-1.0, -2.0]))
    assert solution.solved
    np.testing.assert_allclose(solution.x, [1.0, 2.0], atol=1e-12)
    np.testing.assert_allclose(solution.y, [0.0, 0.0], atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_agrees_with_enumeration(n: int) -> None:
    """Fifty positive-definite problems per size match the brute-force oracle"""
    rng = np.random.default_rng(100 + n)
    for _ in range(50):
        problem = _random_pd_problem(rng, n)
        pivoted = solve_pivoting(problem)
        enumerated = solve_enumeration(problem)
        assert pivoted.solved and enumerated.solved
        np.testing.assert_allclose(pivoted.x, enumerated.x, atol=1e-10)
        np.testing.assert_allclose(pivoted.y, enumerated.y, atol=1e-10)
        # the final basis is re-solved, so basic x have an exactly zero partner
        assert np.all(pivoted.y[pivoted.x > 0] == 0.0)


def test_solution_invariants_hold() -> None:
    rng = np.random.default_rng(7)
    problem = _random_pd_problem(rng, 3)
    solution = solve_pivoting(problem, tol=1e-9)
    assert is_complementary(problem, solution.x, solution.y, 1e-9)


def test_deterministic() -> None:
    rng = np.random.default_rng(11)
    problem = _random_pd_problem(rng, 4)
    first = solve_pivoting(problem)
    second = solve_pivoting(problem)
    assert first.x.tobytes() == second.x.tobytes()
    assert first.y.tobytes() == second.y.tobytes()


def test_ray_termination() -> None:
    """No solution: y = -x - 1 can never be nonnegative"""
    solution = solve_pivoting(LcpProblem(A=[[-1.0]], b=[-1.0]))
    assert solution.status == LcpStatus.RAY_TERMINATION
    assert not solution.solved


def test_pivot_budget() -> None:
    rng = np.random.default_rng(3)
    problem = _random_pd_problem(rng, 4)
    problem = LcpProblem(A=problem.A, b=-np.abs(problem.b) - 1.0)
    solution = solve_pivoting(problem, max_pivots=1)
    assert solution.status == LcpStatus.MAX_ITER


def test_rejects_nonpositive_tol() -> None:
    with pytest.raises(ValueError, match="tol must be positive"):
        solve_pivoting(TABLE_PROBLEM, tol=0.0)


def test_residual_examples() -> None:
    assert lcp_residual(TABLE_PROBLEM, np.array([0.009, 0.0]), np.array([0.0, 0.011])) == (
        pytest.approx(0.0, abs=1e-30)
    )
    single = LcpProblem(A=[[1.0]], b=[0.0])
    assert lcp_residual(single, np.array([1.0]), np.array([1.0])) == pytest.approx(1.0)
    identity = LcpProblem(A=np.eye(2), b=[-1.0, -2.0])
    assert lcp_residual(identity, np.array([1.0, 2.0]), np.zeros(2)) == 0.0


def test_residual_shape_mismatch() -> None:
    with pytest.raises(LcpShapeError, match="expected vectors of length 2"):
        lcp_residual(TABLE_PROBLEM, np.zeros(3), np.zeros(2))


@pytest.mark.parametrize(
    "A, b, message",
    [
        ([[1.0, 0.0]], [1.0], "A must be square"),
        ([[1.0]], [1.0, 2.0], "b must be a vector of length 1"),
        ([[np.inf]], [1.0], "finite"),
    ],
)
def test_problem_validation(A: list[list[float]], b: list[float], message: str) -> None:
    with pytest.raises(ValueError, match=message):
        LcpProblem(A=A, b=b)
