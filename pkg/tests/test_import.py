"""Test friction_pinn."""

import friction_pinn


def test_import() -> None:
    """Test that the package can be imported."""
    assert isinstance(friction_pinn.__name__, str)
    assert friction_pinn.__app_name__ == "friction-pinn"
