"""Tests for the mechanical model types."""

import numpy as np
import pytest

from friction_pinn.dynamics.catalog import model_one, model_two
from friction_pinn.models.mechanics import FrictionLaw, MechModel


def _model_kwargs() -> dict[str, object]:
    return dict(
        mass=[[1.0]],
        stiffness=[[1.0]],
        damping=[[0.0]],
        external_force=[0.0],
        contact_stiffness=[0.0],
        normal_dirs=[[0.0]],
        tangent_dirs=[[1.0]],
        normal_drift=[0.0],
        tangent_drift=[-1.0],
        gap_offset=[0.0],
        friction=[FrictionLaw(mu_s=0.1, delta=1.0)],
    )


def test_presets_have_expected_sizes() -> None:
    assert (model_one().n_dof, model_one().n_contacts) == (1, 1)
    assert (model_two().n_dof, model_two().n_contacts) == (2, 1)
    assert model_one().prescribed_normal
    assert not model_two().prescribed_normal


def test_model_round_trips_through_json() -> None:
    model = model_two()
    restored = MechModel.model_validate_json(model.model_dump_json())
    np.testing.assert_array_equal(restored.stiffness, model.stiffness)
    assert restored.friction == model.friction


def test_dynamic_coefficient_default() -> None:
    law = FrictionLaw(kind="exponential", mu_s=0.4)
    assert law.dynamic == pytest.approx(0.2)


def test_dynamic_above_static_rejected() -> None:
    with pytest.raises(ValueError, match="exceeds"):
        FrictionLaw(kind="exponential", mu_s=0.2, mu_d=0.3)


@pytest.mark.parametrize(
    "override, message",
    [
        ({"mass": [[1.0, 0.0], [0.0, 1.0]]}, "mass must be 1x1"),
        ({"mass": [[-1.0]]}, "positive definite"),
        ({"tangent_dirs": [[1.0, 0.0]]}, "normal_dirs must be 1x2"),
        ({"gap_offset": [0.0, 0.0]}, "gap_offset must have length 1"),
        ({"contact_stiffness": [-5.0]}, "nonnegative"),
        ({"normal_force": [-1.0]}, "normal_force"),
    ],
)
def test_model_validation(override: dict[str, object], message: str) -> None:
    kwargs = _model_kwargs() | override
    with pytest.raises(ValueError, match=message):
        MechModel(**kwargs)  # type: ignore[arg-type]


def test_with_friction_replaces_every_law() -> None:
    law = FrictionLaw(kind="constant", mu_s=1.2)
    model = model_two().with_friction(law)
    assert model.friction_law(0) == law
