"""friction_pinn test suite."""
