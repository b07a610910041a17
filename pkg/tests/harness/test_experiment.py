from pathlib import Path

import pytest

from friction_pinn.dynamics.catalog import model_two
from friction_pinn.harness.experiment import (
    ConfigError,
    load_experiment,
    pinn_config,
    quantities,
    read_config_file,
    run_experiment,
)
from friction_pinn.models.experiment import ComparisonReport, ExperimentConfig, MethodSpec

SHORT_RUN = """
name = "short"
t_end = 0.5

[model]
preset = "model1"

[oracle]

[[methods]]
scheme = "conventional"
dt = 0.01

[[methods]]
scheme = "rk4"
dt = 0.01
"""


def _experiment(**kwargs) -> ExperimentConfig:
    return ExperimentConfig.model_validate({"name": "test", "t_end": 0.5, **kwargs})


def test_read_toml_and_json(tmp_path: Path) -> None:
    toml_path = tmp_path / "a.toml"
    toml_path.write_text('name = "a"\nt_end = 1.0\n')
    json_path = tmp_path / "a.json"
    json_path.write_text('{"name": "a", "t_end": 1.0}')
    assert read_config_file(toml_path) == read_config_file(json_path)


@pytest.mark.parametrize(
    "name, content, message",
    [
        ("missing.toml", None, "cannot read"),
        ("bad.toml", "name = ", "cannot parse"),
        ("bad.json", "{", "cannot parse"),
        ("list.json", "[1, 2]", "table at the top level"),
    ],
)
def test_unreadable_config(
    tmp_path: Path, name: str, content: str | None, message: str
) -> None:
    path = tmp_path / name
    if content is not None:
        path.write_text(content)
    with pytest.raises(ConfigError, match=message):
        read_config_file(path)


def test_experiment_without_methods_or_oracle(tmp_path: Path) -> None:
    path = tmp_path / "empty.toml"
    path.write_text("t_end = 1.0\n")
    with pytest.raises(ConfigError, match="invalid experiment"):
        load_experiment(path)


def test_duplicate_methods_are_rejected() -> None:
    with pytest.raises(ValueError, match="must differ"):
        _experiment(methods=[{"scheme": "rk4", "dt": 0.01}, {"scheme": "rk4", "dt": 0.01}])


def test_pinn_config_overrides() -> None:
    spec = MethodSpec(scheme="advanced_dual", dt=0.01, order=3, tol=1e-8, hidden_layers=[4])
    cfg = pinn_config(spec, seed=7)
    assert cfg.scheme == "advanced_dual"
    assert cfg.order == 3
    assert cfg.tol == 1e-8
    assert cfg.hidden_layers == [4]
    assert cfg.seed == 7
    assert cfg.max_iter == 500


def test_quantities_of_model_two() -> None:
    assert quantities(model_two()) == ["lambda_N_1", "lambda_T_1", "q_1", "q_2", "u_1", "u_2"]


def test_oracle_only_experiment(tmp_path: Path) -> None:
    report = run_experiment(_experiment(oracle={}), tmp_path)
    assert len(report.rows) == 1
    row = report.rows[0]
    assert row.is_oracle
    assert row.method_tag == "switching"
    assert set(row.errors.values()) == {0.0}
    assert row.rms["lambda_N_1"] == pytest.approx(10.0)
    for name in ["switching.csv", "switching_events.csv", "report.txt", "report.json"]:
        assert (tmp_path / name).exists()


def test_short_run_against_oracle(tmp_path: Path) -> None:
    path = tmp_path / "short.toml"
    path.write_text(SHORT_RUN)
    report = run_experiment(load_experiment(path), tmp_path / "out")

    assert [row.label for row in report.rows] == [
        "switching@dt=0.01",
        "conventional_lcp@dt=0.01",
        "rk4_lcp@dt=0.01",
    ]
    conventional = report.row("conventional_lcp@dt=0.01")
    assert conventional.valid is True
    assert conventional.errors["lambda_N_1"] == pytest.approx(0.0)
    assert conventional.errors["q_1"] is not None
    assert conventional.errors["q_1"] < 5.0
    assert (tmp_path / "out" / "conventional_lcp_dt0.01.csv").exists()
    assert (tmp_path / "out" / "rk4_lcp_dt0.01_spectrum.csv").exists()

    saved = ComparisonReport.model_validate_json((tmp_path / "out" / "report.json").read_text())
    assert saved == report


def test_reports_do_not_depend_on_workers(tmp_path: Path) -> None:
    path = tmp_path / "short.toml"
    path.write_text(SHORT_RUN)
    cfg = load_experiment(path)
    run_experiment(cfg, tmp_path / "one", workers=1)
    run_experiment(cfg, tmp_path / "two", workers=2)
    assert (tmp_path / "one" / "report.json").read_text() == (
        tmp_path / "two" / "report.json"
    ).read_text()


def test_failed_method_is_reported(tmp_path: Path) -> None:
    failing = {
        "scheme": "single",
        "dt": 0.01,
        "order": 1,
        "hidden_layers": [2],
        "tol": 1e-300,
        "max_iter": 1,
    }
    cfg = _experiment(methods=[failing, {"scheme": "conventional", "dt": 0.01}])
    report = run_experiment(cfg, tmp_path)

    failed = report.rows[0]
    assert failed.label == "single_pinn_1@dt=0.01"
    assert failed.failure is not None
    assert "dynamics" in failed.failure
    assert failed.rms == {}
    assert report.rows[1].failure is None
    assert report.rows[1].valid is None
    assert "single_pinn_1@dt=0.01: step 0" in (tmp_path / "report.txt").read_text()
