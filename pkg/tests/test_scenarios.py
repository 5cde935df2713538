import math

import pytest

from gptcomp import RunConfig, UnknownScenarioError
from gptcomp.scenarios import ScenarioReport, builtin_registry, run_scenario


def test_registry_contents():
    names = [s.name for s in builtin_registry()]
    assert len(names) >= 9
    for required in (
        "min-ic3",
        "max-ic3",
        "square-ic2",
        "octagon-ic2",
        "quantum-ic3-baseline",
        "capacity-square",
        "capacity-octagon",
        "min-capacity-accounting",
        "max-capacity-accounting",
    ):
        assert required in names
    assert len(set(names)) == len(names)
    for s in builtin_registry():
        assert s.anchor


def test_unknown_scenario_lists_registry():
    with pytest.raises(UnknownScenarioError, match="min-ic3"):
        run_scenario("no-such-thing")


def test_min_ic3_report_values():
    report = run_scenario("min-ic3")
    assert report.passed
    by_label = {c.label: c for c in report.checks}
    assert by_label["score_bits"].actual == pytest.approx(
        3.0 - (2.0 - 0.75 * math.log2(3.0)), abs=1e-9
    )
    assert by_label["violation"].actual is True
    assert report.summary["score_bits"] == pytest.approx(2.1887219, abs=1e-6)


def test_octagon_report_value():
    report = run_scenario("octagon-ic2")
    assert report.passed
    p = 1 - 1 / math.sqrt(2)
    assert report.summary["score_bits"] == pytest.approx(
        2 - 1 / (2 * math.sqrt(2)) + p * math.log2(p), abs=1e-9
    )


def test_report_document_schema():
    report = run_scenario("capacity-square")
    doc = report.to_dict()
    assert set(doc) == {"scenario", "anchor", "passed", "wall_time_s", "checks", "summary"}
    for check in doc["checks"]:
        assert set(check) == {"label", "expected", "actual", "tolerance", "passed"}
    assert doc["passed"] is True
    assert doc["summary"] is None
    assert ScenarioReport.csv_header() == "scenario,score_bits,bound_bits,violation,pass"
    assert report.csv_row() == "capacity-square,,,,true"


def test_game_scenario_csv_row():
    report = run_scenario("max-ic3")
    row = report.csv_row().split(",")
    assert row[0] == "max-ic3"
    assert float(row[1]) == pytest.approx(3.0, abs=1e-9)
    assert float(row[2]) == pytest.approx(2.0)
    assert row[3] == "true"
    assert row[4] == "true"


def test_runs_are_deterministic_modulo_wall_time():
    cfg = RunConfig(tolerance=1e-9, grid_density=24, seed=7)
    a = run_scenario("min-ic3", cfg).to_dict()
    b = run_scenario("min-ic3", cfg).to_dict()
    a.pop("wall_time_s")
    b.pop("wall_time_s")
    assert a == b


def test_config_is_honored():
    report = run_scenario("max-ic3", RunConfig(grid_density=16))
    assert report.passed
