"""JSON persistence of trained networks."""

from pathlib import Path

from pydantic import ValidationError

from friction_pinn.models.network import Fnn
from friction_pinn.nn.network import NetworkShapeError


def save_network(net: Fnn, path: Path) -> None:
    """Write layer widths, activation and row-major parameters as JSON."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(net.model_dump_json(indent=2), encoding="utf-8")


def load_network(path: Path) -> Fnn:
    """
    Read a network written by :func:`save_network`.

    Raises:
        NetworkShapeError: If the file does not describe a consistent network
    """
    try:
        return Fnn.model_validate_json(path.read_text(encoding="utf-8"))
    except ValidationError as e:
        raise NetworkShapeError(f"{path}: {e.error_count()} invalid network field(s)") from e
