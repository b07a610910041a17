"""Built-in mechanical models and their initial conditions.

``model1`` is a mass on a moving belt with a prescribed normal force
(stick-slip). ``model2`` is a two-DoF slider pressed against a belt through
a contact spring (mode coupling, separation and reattachment).
"""

import numpy as np

from friction_pinn.dynamics.contact import make_state
from friction_pinn.models.experiment import ModelSpec
from friction_pinn.models.mechanics import FrictionLaw, MechModel, SystemState

MODEL_ONE_BELT_VELOCITY = 0.2
MODEL_ONE_NORMAL_FORCE = 10.0
MODEL_TWO_BELT_VELOCITY = 1.0

MODEL_TWO_EXAMPLES = {
    1: {"mu": 0.4, "q0": -10.0},
    2: {"mu": 1.2, "q0": -1.0},
}


def model_one(
    law: FrictionLaw | None = None,
    belt_velocity: float = MODEL_ONE_BELT_VELOCITY,
    normal_force: float = MODEL_ONE_NORMAL_FORCE,
    mass: float = 1.0,
    stiffness: float = 1.0,
    damping: float = 0.0,
) -> MechModel:
    """
    Single-DoF belt oscillator with a prescribed normal force.

    With the defaults the mass sticks until the spring holds ``mu_s F_n``,
    slips back and sticks again well inside the static band, so the motion
    settles on a stick-slip limit cycle after the first release.

    Example:
        >>> model_one().n_dof
        1
    """
    return MechModel(
        name="model1",
        mass=[[mass]],
        stiffness=[[stiffness]],
        damping=[[damping]],
        external_force=[0.0],
        contact_type="rigid",
        contact_stiffness=[0.0],
        normal_dirs=[[0.0]],
        tangent_dirs=[[1.0]],
        normal_drift=[0.0],
        tangent_drift=[-belt_velocity],
        gap_offset=[0.0],
        friction=[law or FrictionLaw(kind="rational", mu_s=0.1, delta=1.0)],
        normal_force=[normal_force],
    )


def model_two(
    mu: float = 0.4,
    belt_velocity: float = MODEL_TWO_BELT_VELOCITY,
    preload: float = 100.0,
    mass: float = 5.0,
    k1: float = 1000.0,
    k3: float = 600.0,
    contact_stiffness: float = 500.0,
    damping: float = 0.0,
    law: FrictionLaw | None = None,
) -> MechModel:
    """
    Two-DoF slider on a belt moving at ``+v0`` with spring contact.

    ``x`` is tangential and ``y`` normal; the contact spring is compressed
    while ``y < 0`` and the preload ``F_p`` pushes the slider into the belt.
    """
    return MechModel(
        name="model2",
        mass=np.eye(2) * mass,
        stiffness=[[k1 + k3 / 2, -k3 / 2], [-k3 / 2, k3 / 2]],
        damping=np.eye(2) * damping,
        external_force=[0.0, -preload],
        contact_type="spring",
        contact_stiffness=[contact_stiffness],
        normal_dirs=[[0.0], [1.0]],
        tangent_dirs=[[1.0], [0.0]],
        normal_drift=[0.0],
        tangent_drift=[-belt_velocity],
        gap_offset=[0.0],
        friction=[law or FrictionLaw(kind="constant", mu_s=mu)],
    )


def initial_state(
    model: MechModel, q0: list[float] | np.ndarray, u0: list[float] | np.ndarray, t0: float = 0.0
) -> SystemState:
    """State at ``t0`` with contact forces taken from the kinematics."""
    return make_state(model, t0, np.asarray(q0, dtype=float), np.asarray(u0, dtype=float))


def build_model(spec: ModelSpec) -> tuple[MechModel, SystemState]:
    """
    Model and initial state described by a :class:`ModelSpec`.

    Presets start in stick on the belt: ``model1`` from ``x=0, u=v0`` and
    ``model2`` from the selected example's displacements with ``u=(v0, v0)``.
    """
    if spec.preset == "custom":
        model = spec.model
        assert model is not None
        q0 = spec.q0 if spec.q0 is not None else [0.0] * model.n_dof
        u0 = spec.u0 if spec.u0 is not None else [0.0] * model.n_dof
        return model, initial_state(model, q0, u0)

    if spec.preset == "model1":
        v0 = spec.belt_velocity or MODEL_ONE_BELT_VELOCITY
        model = model_one(
            law=spec.friction,
            belt_velocity=v0,
            normal_force=spec.normal_force or MODEL_ONE_NORMAL_FORCE,
        )
        default_q, default_u = [0.0], [v0]
    else:
        v0 = spec.belt_velocity or MODEL_TWO_BELT_VELOCITY
        example = MODEL_TWO_EXAMPLES[spec.example]
        model = model_two(mu=example["mu"], belt_velocity=v0, law=spec.friction)
        default_q, default_u = [example["q0"]] * 2, [v0, v0]
    q0 = spec.q0 if spec.q0 is not None else default_q
    u0 = spec.u0 if spec.u0 is not None else default_u
    return model, initial_state(model, q0, u0)
