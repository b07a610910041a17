"""Linear complementarity problem solvers."""

from friction_pinn.lcp.pinn import LcpNotConvergedError, solve_lcp_pinn, train_lcp_pinn
from friction_pinn.lcp.pivoting import (
    LcpError,
    LcpShapeError,
    lcp_residual,
    solve_enumeration,
    solve_pivoting,
)
from friction_pinn.lcp.scaling import equilibrate

__all__ = [
    "equilibrate",
    "lcp_residual",
    "LcpError",
    "LcpNotConvergedError",
    "LcpShapeError",
    "solve_enumeration",
    "solve_lcp_pinn",
    "solve_pivoting",
    "train_lcp_pinn",
]
