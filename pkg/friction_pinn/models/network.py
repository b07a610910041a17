"""Feedforward network data models."""

from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from friction_pinn.models.arrays import FloatArray


class ActivationKind(BaseModel):
    """
    Hidden-layer activation.

    ``modified_relu`` evaluates ``max(0, a + c1) + c2``; ``c1`` and ``c2`` are
    ignored by the other kinds.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["tanh", "mish", "relu", "modified_relu"] = "tanh"
    c1: float = Field(default=0.0, allow_inf_nan=False)
    c2: float = Field(default=0.0, allow_inf_nan=False)

    @property
    def tag(self) -> str:
        if self.kind == "modified_relu":
            return f"modified_relu({self.c1:g},{self.c2:g})"
        return self.kind


class Fnn(BaseModel):
    """
    L-layer feedforward network.

    Hidden layers apply ``sigma(W a + b)``; the output layer is ``W a``, plus a
    bias only when ``output_bias`` is set. ``biases`` therefore holds one vector
    per hidden layer, and one more for the output layer when ``output_bias``.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    layer_widths: list[int] = Field(min_length=2, description="Input width first, output last")
    weights: list[FloatArray]
    biases: list[FloatArray]
    activation: ActivationKind = Field(default_factory=ActivationKind)
    output_bias: bool = False

    @model_validator(mode="after")
    def _check_shapes(self) -> "Fnn":
        widths = self.layer_widths
        if any(w < 1 for w in widths):
            raise ValueError("layer widths must be positive")
        n_layers = len(widths) - 1
        if len(self.weights) != n_layers:
            raise ValueError(f"expected {n_layers} weight matrices, got {len(self.weights)}")
        n_biases = n_layers - 1 + int(self.output_bias)
        if len(self.biases) != n_biases:
            raise ValueError(f"expected {n_biases} bias vectors, got {len(self.biases)}")
        for layer, w in enumerate(self.weights):
            if w.shape != (widths[layer + 1], widths[layer]):
                raise ValueError(
                    f"layer {layer} weight shape {w.shape} != {(widths[layer + 1], widths[layer])}"
                )
        for layer, bias in enumerate(self.biases):
            if bias.shape != (widths[layer + 1],):
                raise ValueError(f"layer {layer} bias shape {bias.shape} != {(widths[layer + 1],)}")
        if not all(np.all(np.isfinite(p)) for p in [*self.weights, *self.biases]):
            raise ValueError("network parameters must be finite")
        return self

    @property
    def input_width(self) -> int:
        return self.layer_widths[0]

    @property
    def output_width(self) -> int:
        return self.layer_widths[-1]

    @property
    def parameter_count(self) -> int:
        return sum(p.size for p in [*self.weights, *self.biases])


class TrainReport(BaseModel):
    """Summary of one L-BFGS training run."""

    final_loss: float = Field(ge=0)
    iterations: int = Field(ge=0)
    converged: bool
    grad_norm: float = Field(ge=0)
