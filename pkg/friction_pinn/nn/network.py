"""Forward pass, reverse-mode gradients and initialization for :class:`Fnn`.

Training works on a flat parameter vector; :func:`flatten_parameters` and
:func:`unflatten_parameters` convert between it and the per-layer arrays in
layer order (all weights first, then all biases, each row-major).
"""

from typing import Callable, Sequence

import numpy as np
from scipy.special import expit

from friction_pinn.models.network import ActivationKind, Fnn

LossFunction = Callable[[np.ndarray], tuple[float, np.ndarray]]
"""Maps network outputs to ``(loss, dloss/doutputs)``."""


class NetworkShapeError(Exception):
    """Raised when an input or parameter vector does not fit the network."""

    pass


def activate(kind: ActivationKind, a: np.ndarray | float) -> np.ndarray:
    """
    Evaluate an activation element-wise.

    Example:
        >>> float(activate(ActivationKind(kind="modified_relu", c1=0.3, c2=0.1), -1.0))
        0.1
    """
    a = np.asarray(a, dtype=float)
    match kind.kind:
        case "tanh":
            return np.tanh(a)
        case "mish":
            return a * np.tanh(np.logaddexp(0.0, a))
        case "relu":
            return np.maximum(a, 0.0)
        case "modified_relu":
            return np.maximum(a + kind.c1, 0.0) + kind.c2
    raise ValueError(f"unknown activation {kind.kind!r}")


def activation_derivative(kind: ActivationKind, a: np.ndarray | float) -> np.ndarray:
    """Element-wise derivative; the ReLU family uses 0 at the kink."""
    a = np.asarray(a, dtype=float)
    match kind.kind:
        case "tanh":
            return 1.0 - np.tanh(a) ** 2
        case "mish":
            t = np.tanh(np.logaddexp(0.0, a))
            return t + a * (1.0 - t**2) * expit(a)
        case "relu":
            return (a > 0.0).astype(float)
        case "modified_relu":
            return (a + kind.c1 > 0.0).astype(float)
    raise ValueError(f"unknown activation {kind.kind!r}")


def init_network(
    layer_widths: Sequence[int],
    activation: ActivationKind | None = None,
    seed: int = 0,
    output_bias: bool = False,
    nonnegative_output: bool = False,
) -> Fnn:
    """
    Xavier-uniform initialization with zero biases.

    Args:
        layer_widths: Input width, hidden widths, output width
        activation: Hidden-layer activation (tanh when omitted)
        seed: Seed of the weight generator
        output_bias: Give the output layer a bias
        nonnegative_output: Draw output-layer weights from ``[0, limit)``
    """
    rng = np.random.default_rng(seed)
    widths = list(layer_widths)
    weights = []
    for fan_in, fan_out in zip(widths[:-1], widths[1:]):
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-limit, limit, size=(fan_out, fan_in)))
    if nonnegative_output:
        weights[-1] = np.abs(weights[-1])
    biases = [np.zeros(w) for w in widths[1:-1]]
    if output_bias:
        biases.append(np.zeros(widths[-1]))
    return Fnn(
        layer_widths=widths,
        weights=weights,
        biases=biases,
        activation=activation or ActivationKind(),
        output_bias=output_bias,
    )


def flatten_parameters(net: Fnn) -> np.ndarray:
    return np.concatenate([p.ravel() for p in [*net.weights, *net.biases]])


def unflatten_parameters(net: Fnn, theta: np.ndarray) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Split a flat vector into weight and bias arrays shaped like ``net``."""
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (net.parameter_count,):
        raise NetworkShapeError(
            f"expected {net.parameter_count} parameters, got shape {theta.shape}"
        )
    weights, biases = [], []
    offset = 0
    for w in net.weights:
        weights.append(theta[offset : offset + w.size].reshape(w.shape))
        offset += w.size
    for bias in net.biases:
        biases.append(theta[offset : offset + bias.size])
        offset += bias.size
    return weights, biases


def with_parameters(net: Fnn, theta: np.ndarray) -> Fnn:
    """Copy of ``net`` carrying the parameters in ``theta``."""
    weights, biases = unflatten_parameters(net, theta)
    return net.model_copy(
        update={"weights": [w.copy() for w in weights], "biases": [b.copy() for b in biases]}
    )


def _check_input(net: Fnn, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (net.input_width,):
        raise NetworkShapeError(f"expected input of length {net.input_width}, got {x.shape}")
    return x


def _forward_trace(
    net: Fnn, weights: list[np.ndarray], biases: list[np.ndarray], x: np.ndarray
) -> tuple[list[np.ndarray], list[np.ndarray], np.ndarray]:
    activations = [x]
    pre_activations = []
    a = x
    for layer in range(len(weights) - 1):
        z = weights[layer] @ a + biases[layer]
        pre_activations.append(z)
        a = activate(net.activation, z)
        activations.append(a)
    out = weights[-1] @ a
    if net.output_bias:
        out = out + biases[-1]
    return activations, pre_activations, out


def _backward(
    net: Fnn,
    weights: list[np.ndarray],
    activations: list[np.ndarray],
    pre_activations: list[np.ndarray],
    d_out: np.ndarray,
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    n_layers = len(weights)
    d_weights: list[np.ndarray] = [np.empty(0)] * n_layers
    d_biases: list[np.ndarray] = [np.empty(0)] * (n_layers - 1 + int(net.output_bias))
    delta = d_out
    for layer in range(n_layers - 1, -1, -1):
        d_weights[layer] = np.outer(delta, activations[layer])
        if layer < n_layers - 1 or net.output_bias:
            d_biases[layer] = delta
        if layer > 0:
            delta = (weights[layer].T @ delta) * activation_derivative(
                net.activation, pre_activations[layer - 1]
            )
    return d_weights, d_biases


def forward(net: Fnn, x: np.ndarray) -> np.ndarray:
    """
    Evaluate the network on one input vector.

    Raises:
        NetworkShapeError: If ``x`` does not match the input width
    """
    x = _check_input(net, x)
    return _forward_trace(net, list(net.weights), list(net.biases), x)[2]


def gradient(
    net: Fnn, loss: LossFunction, x: np.ndarray
) -> tuple[float, list[np.ndarray], list[np.ndarray]]:
    """
    Loss value and its gradient with respect to every weight and bias.

    Returns:
        ``(loss, d_weights, d_biases)`` with arrays shaped like the parameters
    """
    x = _check_input(net, x)
    weights, biases = list(net.weights), list(net.biases)
    activations, pre_activations, out = _forward_trace(net, weights, biases, x)
    value, d_out = loss(out)
    d_weights, d_biases = _backward(net, weights, activations, pre_activations, np.asarray(d_out))
    return float(value), d_weights, d_biases


def flat_objective(
    net: Fnn, loss: LossFunction, x: np.ndarray
) -> Callable[[np.ndarray], tuple[float, np.ndarray]]:
    """Objective ``theta -> (loss, dloss/dtheta)`` over the flat parameter vector."""
    x = _check_input(net, x)

    def objective(theta: np.ndarray) -> tuple[float, np.ndarray]:
        weights, biases = unflatten_parameters(net, theta)
        activations, pre_activations, out = _forward_trace(net, weights, biases, x)
        value, d_out = loss(out)
        d_weights, d_biases = _backward(
            net, weights, activations, pre_activations, np.asarray(d_out)
        )
        return float(value), np.concatenate([g.ravel() for g in [*d_weights, *d_biases]])

    return objective
