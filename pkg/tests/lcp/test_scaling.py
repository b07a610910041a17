import numpy as np

from friction_pinn.lcp.pivoting import solve_pivoting
from friction_pinn.lcp.scaling import equilibrate
from friction_pinn.models.lcp import LcpProblem


def test_equilibrated_problem_is_normalized() -> None:
    problem = LcpProblem(A=[[1e4, -2.0], [-3.0, 1e-3]], b=[-50.0, 0.2])
    scaled, _ = equilibrate(problem)
    assert np.max(np.abs(scaled.b)) == 1.0
    row_max = np.max(np.abs(scaled.A), axis=1)
    np.testing.assert_allclose(row_max, 1.0, rtol=0.2)


def test_unscaled_solution_solves_original() -> None:
    """Solving the scaled problem and mapping back gives the original solution"""
    problem = LcpProblem(A=[[2000.0, -5.0], [-5.0, 0.01]], b=[-3.0, 0.4])
    scaled, scaling = equilibrate(problem)
    solved = solve_pivoting(scaled)
    x, y = scaling.unscale(solved.x, solved.y)
    direct = solve_pivoting(problem)
    np.testing.assert_allclose(x, direct.x, atol=1e-10)
    np.testing.assert_allclose(y, direct.y, atol=1e-8)


def test_zero_row_keeps_unit_scale() -> None:
    problem = LcpProblem(A=[[0.0, 0.0], [0.0, 4.0]], b=[1.0, -2.0])
    _, scaling = equilibrate(problem)
    assert scaling.row_scale[0] == 1.0
    assert scaling.col_scale[0] == 1.0


def test_zero_b_gain_is_one() -> None:
    _, scaling = equilibrate(LcpProblem(A=np.eye(2), b=[0.0, 0.0]))
    assert scaling.gain == 1.0
