"""Helpers shared by the CLI commands."""

import functools
import json
from pathlib import Path
from typing import Any, Callable

import click
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape

from friction_pinn.dynamics.contact import ModelError
from friction_pinn.dynamics.reference import EventLocationError
from friction_pinn.dynamics.time_stepping import SteppingError
from friction_pinn.harness.experiment import ConfigError, read_config_file
from friction_pinn.harness.metrics import MetricError
from friction_pinn.lcp.pivoting import LcpError
from friction_pinn.models.experiment import ModelSpec
from friction_pinn.nn.network import NetworkShapeError

console = Console(highlight=False)

PRESETS = ("model1", "model2")


def _stage(error: Exception) -> str:
    match error:
        case SteppingError():
            return f"{error.stage} at step {error.step_index}"
        case ConfigError():
            return "config"
        case LcpError():
            return "lcp"
        case ModelError():
            return "model"
        case EventLocationError():
            return "oracle"
        case MetricError():
            return "metrics"
    return "network"


def handle_errors(func: Callable[..., Any]) -> Callable[..., Any]:
    """Decorator that reports solver errors with their stage and aborts."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except (
            ConfigError,
            LcpError,
            ModelError,
            SteppingError,
            EventLocationError,
            MetricError,
            NetworkShapeError,
        ) as e:
            console.print(f"[red]Error in {_stage(e)}:[/red] {escape(str(e))}", style="bold")
            raise click.Abort()

    return wrapper


def output_json(data: Any) -> None:
    """Output data as formatted JSON without any color formatting."""
    print(json.dumps(data, indent=2))  # noqa: T201 `print` is intentional


def format_option(f: Callable[..., Any]) -> Callable[..., Any]:
    return click.option(
        "--format",
        "output_format",
        type=click.Choice(["text", "json"]),
        default="text",
        help="Output format",
    )(f)


def model_spec(model: str, example: int = 1) -> ModelSpec:
    """
    A preset name or a TOML/JSON model file as a :class:`ModelSpec`.

    Raises:
        ConfigError: If the file is unreadable or invalid
    """
    if model in PRESETS:
        return ModelSpec(preset=model, example=example)  # type: ignore[arg-type]
    path = Path(model)
    data = read_config_file(path)
    if "preset" not in data and "model" not in data:
        data = {"model": data}
    data.setdefault("preset", "custom")
    try:
        return ModelSpec.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"invalid model file {path}: {e}") from e
