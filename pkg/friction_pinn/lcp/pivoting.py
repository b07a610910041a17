"""Lemke complementary pivoting and the LCP residual.

The tableau is ``[I, -A, -e, b]`` over the variables ``(y, x, z0)``. Ties in
the ratio test are broken lexicographically against the rows of the current
basis inverse, which keeps the pivot path finite on degenerate problems.
"""

import itertools

import numpy as np

from friction_pinn.logging.logging import get_logger
from friction_pinn.models.lcp import LcpProblem, LcpSolution, LcpStatus

logger = get_logger(__name__)

_PIVOT_EPS = 1e-13
_TIE_EPS = 1e-12


class LcpError(Exception):
    """Base class for LCP failures."""

    pass


class LcpShapeError(LcpError):
    """Raised when vectors do not match the problem dimension."""

    pass


def lcp_residual(problem: LcpProblem, x: np.ndarray, y: np.ndarray) -> float:
    """
    Physics-informed LCP loss ``(sum f_i^2 + sum r_i^2) / N``.

    ``f = y - A x - b`` is the equation residual and ``r = x * y`` the
    element-wise complementarity product.

    Raises:
        LcpShapeError: If x or y do not have length N
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = problem.size
    if x.shape != (n,) or y.shape != (n,):
        raise LcpShapeError(f"expected vectors of length {n}, got {x.shape} and {y.shape}")
    f = y - problem.A @ x - problem.b
    r = x * y
    return float((f @ f + r @ r) / n)


def is_complementary(problem: LcpProblem, x: np.ndarray, y: np.ndarray, tol: float) -> bool:
    """Check the solved-solution invariants at ``tol``."""
    return bool(
        np.min(x) >= -tol
        and np.min(y) >= -tol
        and np.max(np.abs(x * y)) <= tol
        and np.max(np.abs(y - problem.A @ x - problem.b)) <= tol
    )


def _lexicographic_row(
    tableau: np.ndarray, column: np.ndarray, rows: np.ndarray, n: int, z0_row: int
) -> int:
    rhs = tableau.shape[1] - 1
    ratios = tableau[rows, rhs] / column[rows]
    best = ratios.min()
    rows = rows[ratios <= best + _TIE_EPS * max(1.0, abs(best))]
    if z0_row in rows:
        return z0_row
    # the identity block holds the current basis inverse
    for j in range(n):
        if rows.size == 1:
            break
        ratios = tableau[rows, j] / column[rows]
        best = ratios.min()
        rows = rows[ratios <= best + _TIE_EPS * max(1.0, abs(best))]
    return int(rows[0])


def _pivot(tableau: np.ndarray, row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    factor = tableau[:, col].copy()
    factor[row] = 0.0
    tableau -= np.outer(factor, tableau[row])


def _resolve_basis(
    problem: LcpProblem, basis: np.ndarray, tol: float
) -> tuple[np.ndarray, np.ndarray] | None:
    """
    Solve the final complementary basis directly from ``A`` and ``b``.

    The tableau carries the roundoff of every pivot; the direct solve does
    not. ``None`` when the basic block is singular or the result misses
    ``tol``.
    """
    n = problem.size
    active = np.sort(basis[(basis >= n) & (basis < 2 * n)] - n)
    x = np.zeros(n)
    if active.size:
        try:
            x[active] = np.linalg.solve(problem.A[np.ix_(active, active)], -problem.b[active])
        except np.linalg.LinAlgError:
            return None
    y = problem.A @ x + problem.b
    y[active] = 0.0
    x, y = np.maximum(x, 0.0), np.maximum(y, 0.0)
    if not is_complementary(problem, x, y, tol):
        return None
    return x, y


def solve_pivoting(
    problem: LcpProblem, tol: float = 1e-9, max_pivots: int = 1000
) -> LcpSolution:
    """
    Solve an LCP with Lemke's complementary pivoting method.

    Args:
        problem: The LCP to solve
        tol: Tolerance for the solution invariants (must be positive)
        max_pivots: Pivot budget before giving up with ``max_iter``

    Returns:
        LcpSolution with status ``solved``, ``ray_termination`` (no blocking
        row for the entering column) or ``max_iter``

    Example:
        >>> p = LcpProblem(A=[[1.0, -1.0], [-1.0, 0.0]], b=[-0.009, 0.02])
        >>> solve_pivoting(p).x.round(6).tolist()
        [0.009, 0.0]
    """
    if tol <= 0:
        raise ValueError("tol must be positive")

    n = problem.size
    A, b = problem.A, problem.b

    if np.all(b >= 0):
        x = np.zeros(n)
        return LcpSolution(
            x=x, y=b.copy(), residual=lcp_residual(problem, x, b), status=LcpStatus.SOLVED
        )

    z0 = 2 * n
    rhs = 2 * n + 1
    tableau = np.hstack([np.eye(n), -A, -np.ones((n, 1)), b.reshape(-1, 1)])
    basis = np.arange(n)

    row = int(np.argmin(b))
    _pivot(tableau, row, z0)
    leaving = int(basis[row])
    basis[row] = z0
    entering = leaving + n

    status = LcpStatus.MAX_ITER
    pivots = 1
    while pivots < max_pivots:
        column = tableau[:, entering]
        candidates = np.flatnonzero(column > _PIVOT_EPS)
        if candidates.size == 0:
            status = LcpStatus.RAY_TERMINATION
            break
        z0_rows = np.flatnonzero(basis == z0)
        z0_row = int(z0_rows[0]) if z0_rows.size else -1
        row = _lexicographic_row(tableau, column, candidates, n, z0_row)
        _pivot(tableau, row, entering)
        pivots += 1
        leaving = int(basis[row])
        basis[row] = entering
        if leaving == z0:
            status = LcpStatus.SOLVED
            break
        entering = leaving + n if leaving < n else leaving - n

    values = np.zeros(2 * n + 1)
    values[basis] = tableau[:, rhs]
    y = np.maximum(values[:n], 0.0)
    x = np.maximum(values[n : 2 * n], 0.0)

    if status == LcpStatus.SOLVED:
        resolved = _resolve_basis(problem, basis, tol)
        if resolved is not None:
            x, y = resolved
        elif not is_complementary(problem, x, y, tol):
            logger.warning("pivoting finished but the solution misses tol=%g", tol)
            status = LcpStatus.NOT_CONVERGED
    if status != LcpStatus.SOLVED:
        logger.debug("Lemke stopped with %s after %d pivots", status, pivots)

    return LcpSolution(
        x=x, y=y, residual=lcp_residual(problem, x, y), status=status, iterations=pivots
    )


def solve_enumeration(problem: LcpProblem, tol: float = 1e-10) -> LcpSolution:
    """
    Brute-force LCP oracle over all ``2^N`` complementary index sets.

    For each set S the subsystem ``A_SS x_S = -b_S`` is solved with
    ``x = 0`` off S; the first pair with ``x, y >= -tol`` is returned. Meant
    for small N only.
    """
    n = problem.size
    A, b = problem.A, problem.b
    for mask in itertools.product([False, True], repeat=n):
        active = np.flatnonzero(mask)
        x = np.zeros(n)
        if active.size:
            try:
                x[active] = np.linalg.solve(A[np.ix_(active, active)], -b[active])
            except np.linalg.LinAlgError:
                continue
        y = A @ x + b
        y[active] = 0.0
        if np.min(x) >= -tol and np.min(y) >= -tol:
            x = np.maximum(x, 0.0)
            y = np.maximum(y, 0.0)
            return LcpSolution(
                x=x, y=y, residual=lcp_residual(problem, x, y), status=LcpStatus.SOLVED
            )
    zeros = np.zeros(n)
    return LcpSolution(
        x=zeros,
        y=b.copy(),
        residual=lcp_residual(problem, zeros, b),
        status=LcpStatus.RAY_TERMINATION,
    )
