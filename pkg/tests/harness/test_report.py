from pathlib import Path

from friction_pinn.harness.report import report_text, write_report
from friction_pinn.models.experiment import ComparisonReport, ComparisonRow


def _report() -> ComparisonReport:
    return ComparisonReport(
        experiment="model2-example1",
        quantities=["q_1"],
        rows=[
            ComparisonRow(
                label="root_shooting@dt=0.001",
                method_tag="root_shooting",
                dt=1e-3,
                is_oracle=True,
                rms={"q_1": 1790.0},
                errors={"q_1": 0.0},
                peaks=[(2.5, 1.0)],
            ),
            ComparisonRow(
                label="adv_single_pinn_4@dt=0.001",
                method_tag="adv_single_pinn_4",
                dt=1e-3,
                rms={"q_1": 1716.0},
                errors={"q_1": 4.134078},
                valid=True,
            ),
            ComparisonRow(
                label="conventional_lcp@dt=0.001",
                method_tag="conventional_lcp",
                dt=1e-3,
                rms={"q_1": 12.0},
                errors={"q_1": None},
                valid=False,
            ),
            ComparisonRow(
                label="dual_pinn_4@dt=0.001",
                method_tag="dual_pinn_4",
                dt=1e-3,
                failure="step 3 (t=0.003) failed in lcp: ray termination",
            ),
        ],
    )


def test_report_text_marks_each_row() -> None:
    text = report_text(_report())
    rows = [line for line in text.splitlines() if "│" in line and "@dt=" in line]
    lines = {line.split("│")[1].strip(): line for line in rows}
    assert "oracle" in lines["root_shooting@dt=0.001"]
    assert "(0.00%)" in lines["root_shooting@dt=0.001"]
    assert "1716 (4.13%)" in lines["adv_single_pinn_4@dt=0.001"]
    assert "12 (×)" in lines["conventional_lcp@dt=0.001"]
    assert "failed" in lines["dual_pinn_4@dt=0.001"]
    assert "dual_pinn_4@dt=0.001: step 3 (t=0.003) failed in lcp" in text
    assert "2.5" in lines["root_shooting@dt=0.001"]


def test_write_report(tmp_path: Path) -> None:
    report = _report()
    text_path, json_path = write_report(report, tmp_path / "out")
    assert text_path.read_text(encoding="utf-8") == report_text(report)
    assert ComparisonReport.model_validate_json(json_path.read_text()) == report
