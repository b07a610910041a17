"""Data models for friction-pinn."""

from friction_pinn.models.experiment import (
    ComparisonReport,
    ComparisonRow,
    ExperimentConfig,
    MethodSpec,
    ModelSpec,
    OracleSpec,
)
from friction_pinn.models.integration import ButcherTableau, PinnStepConfig, StageForces
from friction_pinn.models.lcp import LcpPinnConfig, LcpProblem, LcpSolution, LcpStatus
from friction_pinn.models.mechanics import (
    AssembledLcp,
    EigenSweep,
    FrictionLaw,
    MechModel,
    Regime,
    SystemState,
)
from friction_pinn.models.network import ActivationKind, Fnn, TrainReport
from friction_pinn.models.trajectory import EventKind, EventRecord, RunDiagnostics, Trajectory

__all__ = [
    "ActivationKind",
    "AssembledLcp",
    "ButcherTableau",
    "ComparisonReport",
    "ComparisonRow",
    "EigenSweep",
    "EventKind",
    "EventRecord",
    "ExperimentConfig",
    "Fnn",
    "FrictionLaw",
    "LcpPinnConfig",
    "LcpProblem",
    "LcpSolution",
    "LcpStatus",
    "MechModel",
    "MethodSpec",
    "ModelSpec",
    "OracleSpec",
    "PinnStepConfig",
    "Regime",
    "RunDiagnostics",
    "StageForces",
    "SystemState",
    "TrainReport",
    "Trajectory",
]
