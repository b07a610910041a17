"""Tests for simulate CLI command."""

import json
from pathlib import Path

import pandas as pd
import pytest
from click.testing import CliRunner

from friction_pinn.cli.__main__ import cli


class TestSimulateCommand:
    """Tests for 'simulate' command."""

    def test_conventional_json(self, runner: CliRunner, tmp_path: Path) -> None:
        args = ["simulate", "--dt", "0.01", "--t-end", "0.05", "--out", str(tmp_path)]
        result = runner.invoke(cli, [*args, "--format", "json"])

        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["method"] == "conventional_lcp"
        assert data["steps"] == 5
        assert data["q_final"] == pytest.approx([0.01])
        assert data["u_final"] == pytest.approx([0.2])
        assert data["regime_share"]["stick"] == 1.0
        assert data["files"] == [str(tmp_path / "conventional_lcp_dt0.01.csv")]
        assert len(pd.read_csv(data["files"][0])) == 6

    def test_text_summary(self, runner: CliRunner, tmp_path: Path) -> None:
        args = ["simulate", "--method", "conventional", "--dt", "0.01", "--t-end", "0.05"]
        result = runner.invoke(cli, [*args, "--out", str(tmp_path)])

        assert result.exit_code == 0
        assert "model1: conventional_lcp (dt=0.01)" in result.output
        assert "stick share" in result.output
        assert "100.0%" in result.output

    def test_oracle_writes_events(self, runner: CliRunner, tmp_path: Path) -> None:
        args = ["simulate", "--method", "oracle", "--dt", "0.01", "--t-end", "5.5"]
        result = runner.invoke(cli, [*args, "--out", str(tmp_path), "--format", "json"])

        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["method"] == "switching"
        assert data["steps"] == 550
        assert data["files"] == [
            str(tmp_path / "switching.csv"),
            str(tmp_path / "switching_events.csv"),
        ]
        events = pd.read_csv(tmp_path / "switching_events.csv")
        assert events["kind"].tolist() == ["stick_to_slip"]
        assert events["t_event"][0] == pytest.approx(5.0, abs=1e-8)

    def test_pinn_saves_network(self, runner: CliRunner, tmp_path: Path) -> None:
        args = ["simulate", "--method", "single", "--order", "1", "--dt", "0.01"]
        args += ["--t-end", "0.02", "--save-net", "--out", str(tmp_path), "--format", "json"]
        result = runner.invoke(cli, args)

        assert result.exit_code == 0
        data = json.loads(result.output)
        assert data["method"] == "single_pinn_1"
        assert data["steps"] == 2
        assert (tmp_path / "single_pinn_1_dt0.01_net.json").exists()
        assert data["diagnostics"]["train_iterations"] > 0

    def test_friction_override(self, runner: CliRunner, tmp_path: Path) -> None:
        """Without friction the belt cannot hold the mass"""
        args = ["simulate", "--law", "constant", "--mu-s", "0", "--dt", "0.01"]
        args += ["--t-end", "0.05", "--out", str(tmp_path), "--format", "json"]
        result = runner.invoke(cli, args)

        assert result.exit_code == 0
        assert json.loads(result.output)["u_final"][0] < 0.2

    def test_model_file(self, runner: CliRunner, tmp_path: Path) -> None:
        model_file = tmp_path / "model.toml"
        model_file.write_text('preset = "model2"\nexample = 2\n')
        args = ["simulate", "--model", str(model_file), "--method", "rk4", "--dt", "0.001"]
        result = runner.invoke(cli, [*args, "--t-end", "0.002", "--out", str(tmp_path)])

        assert result.exit_code == 0
        assert "model2: rk4_lcp (dt=0.001)" in result.output

    def test_missing_model_file(self, runner: CliRunner, tmp_path: Path) -> None:
        result = runner.invoke(cli, ["simulate", "--model", str(tmp_path / "nope.toml")])

        assert result.exit_code == 1
        assert "Error in config" in result.output

    def test_nonpositive_dt(self, runner: CliRunner) -> None:
        result = runner.invoke(cli, ["simulate", "--dt", "0"])

        assert result.exit_code == 2
