"""Contact dynamics, time stepping and reference solutions."""

from friction_pinn.dynamics.catalog import build_model, model_one, model_two
from friction_pinn.dynamics.contact import (
    ModelError,
    assemble_lcp,
    classify_regimes,
    critical_friction,
    eigen_stability,
    friction_coefficient,
    project_to_stick,
)
from friction_pinn.dynamics.irk import interpolate_forces, irk_coefficients
from friction_pinn.dynamics.pinn_stepping import (
    PinnStepNotConvergedError,
    pinn_simulate,
    pinn_step,
)
from friction_pinn.dynamics.reference import (
    EventLocationError,
    root_shooting_simulate_2dof,
    switching_simulate_1dof,
)
from friction_pinn.dynamics.time_stepping import SteppingError, simulate, step_conventional

__all__ = [
    "assemble_lcp",
    "build_model",
    "classify_regimes",
    "critical_friction",
    "eigen_stability",
    "EventLocationError",
    "friction_coefficient",
    "interpolate_forces",
    "irk_coefficients",
    "model_one",
    "model_two",
    "ModelError",
    "pinn_simulate",
    "pinn_step",
    "PinnStepNotConvergedError",
    "project_to_stick",
    "root_shooting_simulate_2dof",
    "simulate",
    "step_conventional",
    "SteppingError",
    "switching_simulate_1dof",
]
