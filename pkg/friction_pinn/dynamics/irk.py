"""Gauss-Legendre collocation tableaux."""

from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import BarycentricInterpolator

from friction_pinn.models.integration import ButcherTableau, StageForces

MAX_ORDER = 100


@lru_cache(maxsize=32)
def irk_coefficients(order: int) -> ButcherTableau:
    """
    Butcher tableau of the ``order``-stage Gauss-Legendre method.

    Nodes are the roots of the shifted Legendre polynomial and
    ``a[k, r]`` is the integral of the r-th Lagrange basis polynomial over
    ``[0, c_k]``, evaluated with the same Gauss rule scaled to that interval.

    Example:
        >>> irk_coefficients(1).a.tolist()
        [[0.5]]
    """
    if not 1 <= order <= MAX_ORDER:
        raise ValueError(f"order must be in [1, {MAX_ORDER}], got {order}")

    nodes, weights = leggauss(order)
    c = (nodes + 1.0) / 2.0
    b = weights / 2.0
    basis = BarycentricInterpolator(c, np.eye(order))
    a = np.empty((order, order))
    for k, c_k in enumerate(c):
        points = c_k * c
        a[k] = (c_k * b) @ basis(points)
    return ButcherTableau(order=order, a=a, b=b, c=c)


def interpolate_forces(
    lambda_prev: tuple[np.ndarray, np.ndarray],
    lambda_curr: tuple[np.ndarray, np.ndarray],
    c: np.ndarray,
) -> StageForces:
    """
    Stage forces ``lambda_prev + c_k (lambda_curr - lambda_prev)``.

    Both arguments are ``(lambda_N, lambda_T)`` pairs.

    Example:
        >>> f = interpolate_forces(([0.0], [0.0]), ([2.0], [2.0]), np.array([0.25, 0.75]))
        >>> f.lambda_t.tolist()
        [[0.5, 1.5]]
    """
    c = np.asarray(c, dtype=float)
    columns = []
    for prev, curr in zip(lambda_prev, lambda_curr):
        prev = np.asarray(prev, dtype=float)
        curr = np.asarray(curr, dtype=float)
        if prev.shape != curr.shape:
            raise ValueError(f"force shapes differ: {prev.shape} and {curr.shape}")
        columns.append(prev[:, None] + np.outer(curr - prev, c))
    return StageForces(lambda_n=columns[0], lambda_t=columns[1])
