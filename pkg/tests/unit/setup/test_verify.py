"""
Tests for checking run directories against expectations.
"""
import json

import pytest

from zenoprotect.setup import ConfigError
from zenoprotect.setup import VerifyReport
from zenoprotect.setup import load_expectations
from zenoprotect.setup import verify
from zenoprotect.setup.config import parse_scenario
from zenoprotect.setup.run import write_manifest
from zenoprotect.setup.verify import Check
from zenoprotect.setup.verify import Expectations


@pytest.fixture
def run_dir(temp_dir):
    summary = {"pm.h.t_m_ns": 3.12, "pm.h.counts": 41000, "fidelity.mean": 0.995,
               "warnings": [], "label": "h"}
    (temp_dir / "summary.json").write_text(json.dumps(summary))
    (temp_dir / "pm_table.csv").write_text("label,t_m_ns\nh,3.12\n")
    (temp_dir / "run.log").write_text("not tracked\n")
    write_manifest(str(temp_dir), parse_scenario({"name": "demo"}), full=False)
    return temp_dir


def _expect(*checks, scenario="demo"):
    return Expectations(scenario=scenario, checks=[Check(**c) for c in checks])


class TestCheck:

    def test_forms(self):
        assert Check(metric="a", expected=1.0, tolerance=0.1).evaluate(1.05).passed
        assert not Check(metric="a", expected=1.0, tolerance=0.1).evaluate(1.2).passed
        assert Check(metric="a", min=0.0, max=1.0).evaluate(0.5).passed
        assert not Check(metric="a", min=0.0).evaluate(-0.5).passed
        assert not Check(metric="a", max=1.0).evaluate(2).passed

    def test_zero_tolerance(self):
        assert Check(metric="a", expected=3.13, tolerance=0.0).evaluate(3.13).passed
        assert not Check(metric="a", expected=3.13, tolerance=0.0).evaluate(3.12).passed

    @pytest.mark.parametrize("value", [None, "3.1", True, float("nan"), [1.0]])
    def test_non_numeric(self, value):
        assert not Check(metric="a", min=0.0).evaluate(value).passed

    @pytest.mark.parametrize("kwargs", [dict(expected=1.0), dict(tolerance=0.1), dict(),
                                        dict(min=0.0, tolerance=-1.0, expected=1.0)])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            Check(metric="a", **kwargs)


class TestVerify:

    def test_manifest_skips_log(self, run_dir):
        manifest = json.loads((run_dir / "manifest.json").read_text())
        assert [a["path"] for a in manifest["artifacts"]] == ["pm_table.csv", "summary.json"]
        assert manifest["scenario"] == "demo"

    def test_pass(self, run_dir):
        report = verify(str(run_dir), _expect(
            dict(metric="pm.h.t_m_ns", expected=3.13, tolerance=0.1),
            dict(metric="pm.h.counts", min=30000)))
        assert report.passed, report.format()
        assert "PASS" in report.format()

    def test_manifest_file_path(self, run_dir):
        report = verify(str(run_dir / "manifest.json"),
                        _expect(dict(metric="fidelity.mean", min=0.99)))
        assert report.passed

    def test_tolerance_zero_fails(self, run_dir):
        report = verify(str(run_dir), _expect(dict(metric="pm.h.t_m_ns", expected=3.13, tolerance=0.0)))
        assert not report.passed
        assert [f.name for f in report.failures] == ["pm.h.t_m_ns"]

    def test_missing_metric(self, run_dir):
        report = verify(str(run_dir), _expect(dict(metric="pm.q.r", min=0.0)))
        assert not report.passed
        assert "missing" in report.failures[0].detail

    def test_scenario_mismatch(self, run_dir):
        report = verify(str(run_dir), _expect(dict(metric="fidelity.mean", min=0.9),
                                              scenario="table2_13loops"))
        assert [f.name for f in report.failures] == ["scenario"]

    def test_missing_artifact(self, run_dir):
        (run_dir / "pm_table.csv").unlink()
        report = verify(str(run_dir), _expect(dict(metric="fidelity.mean", min=0.9)))
        assert [f.detail for f in report.failures] == ["missing artifact"]

    def test_altered_artifact(self, run_dir):
        (run_dir / "pm_table.csv").write_text("label,t_m_ns\nh,3.13\n")
        report = verify(str(run_dir), _expect(dict(metric="fidelity.mean", min=0.9)))
        assert [f.detail for f in report.failures] == ["checksum mismatch"]

    def test_log_changes_are_ignored(self, run_dir):
        (run_dir / "run.log").write_text("rewritten\n")
        assert verify(str(run_dir), _expect(dict(metric="fidelity.mean", min=0.9))).passed

    def test_missing_manifest(self, temp_dir):
        report = verify(str(temp_dir), _expect(dict(metric="fidelity.mean", min=0.9)))
        assert not report.passed

    def test_empty_report_fails(self):
        report = VerifyReport("demo")
        assert not report.passed
        report.add("x", True, "ok")
        assert report.passed
        assert list(report.to_frame().columns) == ["name", "passed", "detail"]


class TestExpectationFiles:

    @pytest.mark.parametrize("name", ["fig3_stab_onoff", "table2_13loops", "table2_8loops"])
    def test_bundled(self, name, expectations_dir):
        expectations = load_expectations(str(expectations_dir / (name + ".yml")))
        assert expectations.scenario == name
        assert expectations.checks

    def test_invalid(self, temp_dir):
        path = temp_dir / "bad.yml"
        path.write_text("scenario: demo\nchecks:\n  - {metric: a, expected: 1.0}\n")
        with pytest.raises(ConfigError):
            load_expectations(str(path))
