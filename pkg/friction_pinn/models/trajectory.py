"""Trajectory, event and run-diagnostic models."""

from enum import StrEnum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from friction_pinn.models.mechanics import SystemState


class EventKind(StrEnum):
    STICK_TO_SLIP = "stick_to_slip"
    SLIP_TO_STICK = "slip_to_stick"
    SLIP_REVERSAL = "slip_reversal"
    SEPARATION = "separation"
    REATTACHMENT = "reattachment"


class EventRecord(BaseModel):
    """A located regime transition."""

    model_config = ConfigDict(frozen=True)

    t_event: float = Field(description="Event time (s)")
    kind: EventKind
    contact: int = Field(default=0, ge=0)
    bracket_width: float = Field(default=0.0, ge=0, description="Final bracketing interval (s)")


class RunDiagnostics(BaseModel):
    """Solver counters accumulated over a run."""

    lcp_iterations: int = 0
    lcp_restarts: int = 0
    train_iterations: int = 0
    step_restarts: int = 0
    cold_starts: int = Field(default=0, description="Steps where the warm start was abandoned")
    events: int = 0


class Trajectory(BaseModel):
    """States on a uniform time grid produced by one method."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    method_tag: str
    dt: float = Field(gt=0, description="Grid spacing (s)")
    states: list[SystemState] = Field(min_length=1)
    diagnostics: RunDiagnostics = Field(default_factory=RunDiagnostics)

    @model_validator(mode="after")
    def _check_grid(self) -> "Trajectory":
        if len(self.states) > 1:
            steps = np.diff(self.times)
            if np.any(steps <= 0):
                raise ValueError("times must be strictly increasing")
            if not np.allclose(steps, self.dt, rtol=1e-6, atol=1e-12):
                raise ValueError(f"times are not uniformly spaced by {self.dt:g}")
        return self

    @property
    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.states])

    @property
    def q(self) -> np.ndarray:
        """Displacements, one row per state."""
        return np.array([s.q for s in self.states])

    @property
    def u(self) -> np.ndarray:
        return np.array([s.u for s in self.states])

    @property
    def lambda_n(self) -> np.ndarray:
        return np.array([s.lambda_n for s in self.states])

    @property
    def lambda_t(self) -> np.ndarray:
        return np.array([s.lambda_t for s in self.states])

    @property
    def regimes(self) -> np.ndarray:
        """Regime codes, one row per state."""
        return np.array([[int(r) for r in s.regime] for s in self.states], dtype=int)

    @property
    def final(self) -> SystemState:
        return self.states[-1]
