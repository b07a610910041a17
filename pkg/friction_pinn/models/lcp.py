"""Linear complementarity problem data models.

An LCP asks for x, y >= 0 with y = A x + b and x_i * y_i = 0 for every i.
"""

from enum import StrEnum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from friction_pinn.models.arrays import FloatArray
from friction_pinn.models.network import ActivationKind


class LcpStatus(StrEnum):
    """Outcome of an LCP solve."""

    SOLVED = "solved"
    RAY_TERMINATION = "ray_termination"
    MAX_ITER = "max_iter"
    NOT_CONVERGED = "not_converged"


class LcpProblem(BaseModel):
    """
    A dense LCP instance ``y = A x + b``.

    Example:
        >>> LcpProblem(A=[[1.0, -1.0], [-1.0, 0.0]], b=[-0.009, 0.02]).size
        2
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    A: FloatArray = Field(description="Square LCP matrix (N x N)")
    b: FloatArray = Field(description="Offset vector (length N)")

    @model_validator(mode="after")
    def _check_shapes(self) -> "LcpProblem":
        if self.A.ndim != 2 or self.A.shape[0] != self.A.shape[1]:
            raise ValueError(f"A must be square, got shape {self.A.shape}")
        if self.b.ndim != 1 or self.b.shape[0] != self.A.shape[0]:
            raise ValueError(
                f"b must be a vector of length {self.A.shape[0]}, got shape {self.b.shape}"
            )
        if not (np.all(np.isfinite(self.A)) and np.all(np.isfinite(self.b))):
            raise ValueError("A and b must be finite")
        return self

    @property
    def size(self) -> int:
        """Dimension N of the problem."""
        return int(self.b.shape[0])


class LcpSolution(BaseModel):
    """A complementary pair (x, y) with its residual and solver status."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    x: FloatArray = Field(description="Primal vector, x >= 0")
    y: FloatArray = Field(description="Complementary vector, y >= 0")
    residual: float = Field(ge=0, description="lcp_residual of (x, y) on the solved problem")
    status: LcpStatus
    iterations: int = Field(default=0, ge=0, description="Pivots or training iterations used")
    restarts: int = Field(default=0, ge=0, description="Reseeded restarts (PINN solver only)")

    @property
    def solved(self) -> bool:
        return self.status == LcpStatus.SOLVED


class LcpPinnConfig(BaseModel):
    """Settings of the network-based LCP solver."""

    model_config = ConfigDict(frozen=True)

    hidden_layers: list[int] = Field(default_factory=lambda: [5, 5, 5], min_length=1)
    activation: ActivationKind = Field(
        default_factory=lambda: ActivationKind(kind="modified_relu")
    )
    output_activation: ActivationKind = Field(
        default_factory=lambda: ActivationKind(kind="modified_relu"),
        description="Applied to the affine output; keeps x and y nonnegative",
    )
    input_values: list[float] = Field(default_factory=lambda: [1.0], min_length=1)
    tol: float = Field(default=1e-12, gt=0, description="Target loss of the equilibrated problem")
    max_iter: int = Field(default=2000, gt=0)
    seed: int = 0
    max_restarts: int = Field(default=3, ge=0)
