"""Minimal feedforward network engine with an L-BFGS trainer."""

from friction_pinn.nn.io import load_network, save_network
from friction_pinn.nn.lbfgs import TrainingDivergedError, train_lbfgs
from friction_pinn.nn.network import (
    NetworkShapeError,
    activate,
    forward,
    gradient,
    init_network,
)

__all__ = [
    "activate",
    "forward",
    "gradient",
    "init_network",
    "load_network",
    "NetworkShapeError",
    "save_network",
    "train_lbfgs",
    "TrainingDivergedError",
]
