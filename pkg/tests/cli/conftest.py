import pytest
from click.testing import CliRunner


@pytest.fixture
def runner() -> CliRunner:
    """Wide terminal, warnings-only logging so JSON output stays parseable."""
    return CliRunner(env={"COLUMNS": "200", "FRICTION_PINN_LOG_LEVEL": "WARNING"})
