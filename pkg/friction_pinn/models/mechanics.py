"""Mechanical model, friction law and state types.

Sign conventions: ``M u' = h + W_N lambda_N + W_T lambda_T`` with
``h = -C_s u - K_s q + f_e``. Gaps are ``g_N = W_N^T q + g_0`` and relative
tangential velocities ``gamma_T = W_T^T u + w_T``.
"""

from enum import IntEnum
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from friction_pinn.models.arrays import FloatArray
from friction_pinn.models.lcp import LcpProblem


class Regime(IntEnum):
    """Per-contact motion regime; the values are the CSV codes."""

    STICK = 0
    SLIP = 1
    SEPARATED = 2


class FrictionLaw(BaseModel):
    """
    Coulomb-Stribeck friction coefficient as a function of sliding speed.

    Kinds:
    - ``rational``: ``mu_s / (1 + delta |v|)``
    - ``exponential``: ``mu_d + (mu_s - mu_d) exp(-alpha |v|)``; with
      ``printed_form`` the variant ``mu_s + (mu_s - mu_d) exp(-alpha |v|)``
    - ``constant``: ``mu_s``
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["rational", "exponential", "constant"] = "rational"
    mu_s: float = Field(ge=0, description="Static friction coefficient")
    delta: float = Field(default=0.0, ge=0, description="Rational decay rate (s/m)")
    mu_d: Optional[float] = Field(
        default=None, ge=0, description="Dynamic coefficient, 0.5 mu_s when omitted"
    )
    alpha: float = Field(default=10.0, ge=0, description="Exponential decay rate (s/m)")
    printed_form: bool = False

    @model_validator(mode="after")
    def _check_coefficients(self) -> "FrictionLaw":
        if self.mu_d is not None and self.mu_d > self.mu_s:
            raise ValueError(f"mu_d={self.mu_d} exceeds mu_s={self.mu_s}")
        return self

    @property
    def dynamic(self) -> float:
        return 0.5 * self.mu_s if self.mu_d is None else self.mu_d


ContactType = Literal["rigid", "spring"]


class MechModel(BaseModel):
    """
    Discrete mechanical system with unilateral frictional contacts.

    When ``normal_force`` is given the normal contact forces are prescribed
    (the 1-DoF belt oscillator) and ``normal_dirs`` is ignored by the
    assemblers.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    name: str = "custom"
    mass: FloatArray = Field(description="M, symmetric positive definite (kg)")
    stiffness: FloatArray = Field(description="K_s without unilateral constraints (N/m)")
    damping: FloatArray = Field(description="C_s (N s/m)")
    external_force: FloatArray = Field(description="f_e, constant external forces (N)")
    contact_type: ContactType = "rigid"
    contact_stiffness: FloatArray = Field(description="Diagonal of k_c per contact (N/m)")
    normal_dirs: FloatArray = Field(description="W_N, n_dof x n_contacts")
    tangent_dirs: FloatArray = Field(description="W_T, n_dof x n_contacts")
    normal_drift: FloatArray = Field(description="w_N per contact (m/s)")
    tangent_drift: FloatArray = Field(description="w_T per contact, -v0 for a belt (m/s)")
    gap_offset: FloatArray = Field(description="g_0 per contact (m)")
    friction: list[FrictionLaw] = Field(min_length=1)
    normal_force: Optional[FloatArray] = Field(
        default=None, description="Prescribed normal force per contact (N)"
    )

    @model_validator(mode="after")
    def _check_model(self) -> "MechModel":
        n = self.external_force.shape[0] if self.external_force.ndim == 1 else -1
        if n < 1:
            raise ValueError("external_force must be a non-empty vector")
        for label, matrix in [
            ("mass", self.mass),
            ("stiffness", self.stiffness),
            ("damping", self.damping),
        ]:
            if matrix.shape != (n, n):
                raise ValueError(f"{label} must be {n}x{n}, got {matrix.shape}")
        if not np.allclose(self.mass, self.mass.T):
            raise ValueError("mass matrix must be symmetric")
        if np.min(np.linalg.eigvalsh(self.mass)) <= 0:
            raise ValueError("mass matrix must be positive definite")

        c = self.tangent_dirs.shape[1] if self.tangent_dirs.ndim == 2 else -1
        if c < 1:
            raise ValueError("tangent_dirs must be an n_dof x n_contacts matrix")
        for label, matrix in [
            ("normal_dirs", self.normal_dirs),
            ("tangent_dirs", self.tangent_dirs),
        ]:
            if matrix.shape != (n, c):
                raise ValueError(f"{label} must be {n}x{c}, got {matrix.shape}")
        for label, vector in [
            ("contact_stiffness", self.contact_stiffness),
            ("normal_drift", self.normal_drift),
            ("tangent_drift", self.tangent_drift),
            ("gap_offset", self.gap_offset),
        ]:
            if vector.shape != (c,):
                raise ValueError(f"{label} must have length {c}, got {vector.shape}")
        if np.any(self.contact_stiffness < 0):
            raise ValueError("contact stiffness must be nonnegative")
        if len(self.friction) not in (1, c):
            raise ValueError(f"need 1 or {c} friction laws, got {len(self.friction)}")
        if self.normal_force is not None:
            if self.normal_force.shape != (c,) or np.any(self.normal_force < 0):
                raise ValueError(f"normal_force must be {c} nonnegative values")
        return self

    @property
    def n_dof(self) -> int:
        return int(self.external_force.shape[0])

    @property
    def n_contacts(self) -> int:
        return int(self.tangent_dirs.shape[1])

    @property
    def prescribed_normal(self) -> bool:
        return self.normal_force is not None

    def friction_law(self, contact: int) -> FrictionLaw:
        return self.friction[0] if len(self.friction) == 1 else self.friction[contact]

    def with_friction(self, law: FrictionLaw) -> "MechModel":
        """Copy of the model with ``law`` at every contact."""
        return self.model_copy(update={"friction": [law]})


class SystemState(BaseModel):
    """Configuration, velocities and contact quantities at one instant."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    t: float
    q: FloatArray = Field(description="Generalized displacements (m)")
    u: FloatArray = Field(description="Generalized velocities (m/s)")
    lambda_n: FloatArray = Field(description="Normal contact forces (N)")
    lambda_t: FloatArray = Field(description="Tangential friction forces (N)")
    gap: FloatArray = Field(description="Normal gaps g_N (m)")
    gamma_t: FloatArray = Field(description="Relative tangential velocities (m/s)")
    regime: list[Regime]


class AssembledLcp(BaseModel):
    """
    Time-discretized contact LCP for one step.

    Unknowns are scaled by the step: ``x = dt * (Lambda_N, Lambda_L, gamma_R)``
    with ``Lambda = lambda dt``. The ``prescribed_normal`` layout drops the
    ``Lambda_N`` block.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    problem: LcpProblem
    layout: Literal["rigid", "spring", "prescribed_normal"]
    mu: FloatArray = Field(description="Friction coefficient per contact at the step start")
    dt: float = Field(gt=0)


class EigenSweep(BaseModel):
    """Linearized sliding stability over a range of friction coefficients."""

    mu: list[float]
    max_real: list[float] = Field(description="Largest eigenvalue real part per mu (1/s)")
    frequencies: list[list[float]] = Field(
        description="Positive imaginary parts per mu, ascending (rad/s)"
    )
    critical_mu: Optional[float] = Field(
        default=None, description="Smallest mu with a positive real part, bisected"
    )
    merge_mu: Optional[float] = Field(
        default=None, description="First grid mu where two frequencies coincide (mode coupling)"
    )
