"""Experiment configuration and comparison report models."""

from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from friction_pinn.models.mechanics import FrictionLaw, MechModel
from friction_pinn.models.network import ActivationKind

SchemeName = Literal[
    "conventional", "rk4", "single", "dual", "advanced_single", "advanced_dual"
]


class ModelSpec(BaseModel):
    """
    Which mechanical model to build and where to start it.

    A ``custom`` spec must carry a full ``model``; the presets take the
    optional overrides below.
    """

    model_config = ConfigDict(extra="forbid")

    preset: Literal["model1", "model2", "custom"] = "model1"
    example: Literal[1, 2] = Field(
        default=1, description="model2 only: 1 is mu=0.4 from x=y=-10, 2 is mu=1.2 from x=y=-1"
    )
    friction: Optional[FrictionLaw] = None
    belt_velocity: Optional[float] = Field(default=None, gt=0, description="v0 (m/s)")
    normal_force: Optional[float] = Field(
        default=None, gt=0, description="model1 only: prescribed F_n (N)"
    )
    q0: Optional[list[float]] = None
    u0: Optional[list[float]] = None
    model: Optional[MechModel] = None

    @model_validator(mode="after")
    def _check_custom(self) -> "ModelSpec":
        if self.preset == "custom" and self.model is None:
            raise ValueError("a custom model spec needs a 'model' table")
        return self


class MethodSpec(BaseModel):
    """One method run: a scheme at one step size."""

    model_config = ConfigDict(extra="forbid")

    scheme: SchemeName
    dt: float = Field(gt=0, description="Time step (s)")
    order: int = Field(default=4, ge=1, le=100, description="IRK stages (PINN schemes)")
    hidden_layers: Optional[list[int]] = None
    activation: Optional[ActivationKind] = None
    tol: Optional[float] = Field(default=None, gt=0)
    max_iter: Optional[int] = Field(default=None, gt=0)

    @property
    def method_tag(self) -> str:
        match self.scheme:
            case "conventional":
                return "conventional_lcp"
            case "rk4":
                return "rk4_lcp"
            case "advanced_single":
                return f"adv_single_pinn_{self.order}"
            case "advanced_dual":
                return f"adv_dual_pinn_{self.order}"
        return f"{self.scheme}_pinn_{self.order}"

    @property
    def label(self) -> str:
        return f"{self.method_tag}@dt={self.dt:g}"

    @property
    def file_stem(self) -> str:
        return f"{self.method_tag}_dt{self.dt:g}"


class OracleSpec(BaseModel):
    """Reference solver settings; ``kind`` follows the model when omitted."""

    model_config = ConfigDict(extra="forbid")

    kind: Optional[Literal["switching", "root_shooting"]] = None
    event_tol: float = Field(default=1e-10, gt=0, description="Event location tolerance (s)")
    sample_dt: Optional[float] = Field(default=None, gt=0, description="Output grid (s)")


class ExperimentConfig(BaseModel):
    """
    A comparison run: one model, an optional oracle and a list of methods.

    Example (TOML):
        name = "model1-slow"
        t_end = 30.0
        [model]
        preset = "model1"
        [oracle]
        [[methods]]
        scheme = "conventional"
        dt = 0.01
    """

    model_config = ConfigDict(extra="forbid")

    name: str = "experiment"
    model: ModelSpec = Field(default_factory=ModelSpec)
    t_end: float = Field(gt=0, description="Horizon (s)")
    oracle: Optional[OracleSpec] = None
    methods: list[MethodSpec] = Field(default_factory=list)
    seed: int = 0
    v_eps: float = Field(default=1e-6, gt=0, description="Stick velocity tolerance (m/s)")
    output_dir: Optional[Path] = None

    @model_validator(mode="after")
    def _check_methods(self) -> "ExperimentConfig":
        if self.oracle is None and not self.methods:
            raise ValueError("an experiment needs an oracle or at least one method")
        labels = [m.label for m in self.methods]
        if len(set(labels)) != len(labels):
            raise ValueError("methods must differ in scheme, order or dt")
        return self


class ComparisonRow(BaseModel):
    """
    One method's results.

    ``errors`` holds relative errors in percent against the oracle; entries
    are ``None`` when the run failed validity (shown as a cross) or there is
    no oracle.
    """

    label: str
    method_tag: str
    dt: float
    is_oracle: bool = False
    rms: dict[str, float] = Field(default_factory=dict)
    errors: dict[str, Optional[float]] = Field(default_factory=dict)
    valid: Optional[bool] = None
    peaks: list[tuple[float, float]] = Field(
        default_factory=list, description="(frequency Hz, amplitude) of the first displacement"
    )
    failure: Optional[str] = Field(default=None, description="Stage and message of a failed run")
    diagnostics: Optional[dict[str, int]] = None


class ComparisonReport(BaseModel):
    experiment: str
    quantities: list[str]
    rows: list[ComparisonRow]

    def row(self, label: str) -> ComparisonRow:
        for row in self.rows:
            if row.label == label:
                return row
        raise KeyError(label)
