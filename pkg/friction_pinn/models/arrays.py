"""Numpy array field type for pydantic models.

Arrays are validated into float64 copies and serialized as nested lists
(row-major), so every model holding arrays round-trips through JSON.
"""

from typing import Annotated, Any

import numpy as np
from pydantic import PlainSerializer, PlainValidator


def _as_float_array(value: Any) -> np.ndarray:
    try:
        return np.array(value, dtype=float)
    except (TypeError, ValueError) as e:
        raise ValueError(f"not a numeric array: {e}") from e


def _to_list(value: np.ndarray) -> Any:
    return np.asarray(value).tolist()


FloatArray = Annotated[
    np.ndarray,
    PlainValidator(_as_float_array),
    PlainSerializer(_to_list, return_type=list),
]
