"""Implicit Runge-Kutta and step-network models."""

from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from friction_pinn.models.arrays import FloatArray
from friction_pinn.models.lcp import LcpPinnConfig
from friction_pinn.models.network import ActivationKind

PinnScheme = Literal["single", "dual", "advanced_single", "advanced_dual"]


class ButcherTableau(BaseModel):
    """
    Coefficients ``(a, b, c)`` of an R-stage implicit Runge-Kutta method.

    Example:
        >>> ButcherTableau(order=1, a=[[0.5]], b=[1.0], c=[0.5]).c.tolist()
        [0.5]
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    order: int = Field(ge=1, description="Number of stages R")
    a: FloatArray = Field(description="Stage matrix, R x R")
    b: FloatArray = Field(description="Quadrature weights, length R")
    c: FloatArray = Field(description="Nodes in (0, 1), length R")

    @model_validator(mode="after")
    def _check_tableau(self) -> "ButcherTableau":
        r = self.order
        if self.a.shape != (r, r) or self.b.shape != (r,) or self.c.shape != (r,):
            raise ValueError(f"tableau arrays do not match order {r}")
        if abs(self.b.sum() - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1")
        if np.max(np.abs(self.a.sum(axis=1) - self.c)) > 1e-12:
            raise ValueError("stage rows must sum to the nodes")
        return self


class StageForces(BaseModel):
    """Contact forces at the IRK nodes; one column per stage (N)."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    lambda_n: FloatArray = Field(description="Normal forces, n_contacts x R")
    lambda_t: FloatArray = Field(description="Friction forces, n_contacts x R")

    @model_validator(mode="after")
    def _check_forces(self) -> "StageForces":
        if self.lambda_n.ndim != 2 or self.lambda_n.shape != self.lambda_t.shape:
            raise ValueError("stage forces must be two matrices of equal shape")
        if not (np.all(np.isfinite(self.lambda_n)) and np.all(np.isfinite(self.lambda_t))):
            raise ValueError("stage forces must be finite")
        return self

    @classmethod
    def constant(cls, lambda_n: np.ndarray, lambda_t: np.ndarray, order: int) -> "StageForces":
        """The step-level forces repeated at every node."""
        return cls(
            lambda_n=np.repeat(np.asarray(lambda_n, dtype=float)[:, None], order, axis=1),
            lambda_t=np.repeat(np.asarray(lambda_t, dtype=float)[:, None], order, axis=1),
        )


class PinnStepConfig(BaseModel):
    """
    Settings of the PINN time-stepping schemes.

    The step network maps the normalized displacements (``n_dof`` inputs) to
    ``n_dof x (order + 1)`` stage and end velocities. The tableau is the
    Gauss-Legendre one of the given ``order``.
    """

    model_config = ConfigDict(frozen=True)

    scheme: PinnScheme = "single"
    order: int = Field(default=4, ge=1, le=100, description="IRK stages R")
    hidden_layers: list[int] = Field(default_factory=lambda: [20] * 7, min_length=1)
    activation: ActivationKind = Field(default_factory=ActivationKind)
    tol: float = Field(default=1e-10, gt=0, description="Target mean squared step residual")
    max_iter: int = Field(default=500, gt=0)
    max_restarts: int = Field(default=3, ge=0)
    seed: int = 0
    warm_start: bool = True
    lcp: LcpPinnConfig = Field(
        default_factory=LcpPinnConfig, description="LCP network settings (dual schemes)"
    )

    @property
    def advanced(self) -> bool:
        return self.scheme.startswith("advanced")

    @property
    def method_tag(self) -> str:
        base = {
            "single": "single_pinn",
            "dual": "dual_pinn",
            "advanced_single": "adv_single_pinn",
            "advanced_dual": "adv_dual_pinn",
        }[self.scheme]
        return f"{base}_{self.order}"
