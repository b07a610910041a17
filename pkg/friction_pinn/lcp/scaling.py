"""Diagonal equilibration of LCPs.

With positive diagonal ``R`` and ``C`` and gain ``g``, the scaled problem
``(R A C, R b / g)`` has solution ``x~ = C^-1 x / g``, ``y~ = R y / g``.
Sign and complementarity are preserved pair by pair.
"""

import numpy as np
from pydantic import BaseModel, ConfigDict

from friction_pinn.models.arrays import FloatArray
from friction_pinn.models.lcp import LcpProblem


class LcpScaling(BaseModel):
    """Row/column scales and gain mapping a problem to its equilibrated form."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    row_scale: FloatArray
    col_scale: FloatArray
    gain: float

    def unscale(self, x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Map an equilibrated pair back to the original problem."""
        return self.col_scale * x * self.gain, y * self.gain / self.row_scale


def equilibrate(problem: LcpProblem, sweeps: int = 8) -> tuple[LcpProblem, LcpScaling]:
    """
    Ruiz-equilibrate ``A`` and normalize ``b`` to unit max-norm.

    Rows or columns that are entirely zero keep a unit scale.
    """
    A = problem.A.copy()
    n = problem.size
    row = np.ones(n)
    col = np.ones(n)
    for _ in range(sweeps):
        r = np.sqrt(np.max(np.abs(A), axis=1))
        c = np.sqrt(np.max(np.abs(A), axis=0))
        r[r == 0] = 1.0
        c[c == 0] = 1.0
        A = A / r[:, None] / c[None, :]
        row /= r
        col /= c

    b = row * problem.b
    gain = float(np.max(np.abs(b)))
    if gain == 0.0:
        gain = 1.0
    scaled = LcpProblem(A=A, b=b / gain)
    return scaled, LcpScaling(row_scale=row, col_scale=col, gain=gain)
