"""
Tests for scenario loading, overrides and validation.
"""
import io
import json
import os

import pytest

from zenoprotect.setup import ConfigError
from zenoprotect.setup import ScenarioConfig
from zenoprotect.setup import apply_overrides
from zenoprotect.setup import load
from zenoprotect.setup import load_path
from zenoprotect.setup import load_scenario
from zenoprotect.setup import resolve_config
from zenoprotect.setup.config import bundled_names
from zenoprotect.setup.config import dump_scenario
from zenoprotect.setup.config import parse_scenario

BUNDLED = ["fig3_stab_onoff", "fig5_reference_background", "table2_13loops",
           "table2_8loops"]


class TestLoad:

    def test_scientific_notation(self):
        data = load("mu0: 1e9\nrate: 34e3\nsmall: 2.5E-3\nplain: 7")
        assert data == {"mu0": 1e9, "rate": 34e3, "small": 2.5e-3, "plain": 7}
        assert isinstance(data["mu0"], float)

    def test_file_like(self):
        assert load(io.StringIO("seed: 4")) == {"seed": 4}

    def test_environment_substitution(self):
        data = load("output_dir: ${RUNS}/fig3\nlabels:\n  - ${A}", environ={"RUNS": "/data", "A": "h"})
        assert data == {"output_dir": "/data/fig3", "labels": ["h"]}

    def test_home_expansion(self):
        assert load("output_dir: ~/runs")["output_dir"] == os.path.expanduser("~/runs")

    @pytest.mark.parametrize("text", ["out: ${NOT_SET_ANYWHERE_42}", "out: ${OPEN",
                                      "- 1\n- 2", "a: [1, 2"])
    def test_errors(self, text):
        with pytest.raises(ConfigError):
            load(text)

    def test_empty_document(self):
        assert load("") == {}

    def test_load_path(self, temp_dir):
        path = temp_dir / "s.json"
        path.write_text(json.dumps({"name": "j", "seed": 2}))
        assert load_path(str(path)) == {"name": "j", "seed": 2}
        with pytest.raises(ConfigError):
            load_path(str(temp_dir / "missing.yml"))
        other = temp_dir / "s.txt"
        other.write_text("name: x")
        with pytest.raises(ConfigError):
            load_path(str(other))


class TestOverrides:

    def test_typed_values(self):
        config = {"plant": {"loops": 13}}
        apply_overrides(config, ["plant.loops=8", "zeno.thetas=[0.0, 0.785]",
                                 "plant.drift.kind=ou", "seed=3", "description=two words",
                                 "plant.drift.relaxation_s=null", "zeno.full_acquisition_s=1.5e2"])
        assert config["plant"]["loops"] == 8
        assert config["zeno"]["thetas"] == [0.0, 0.785]
        assert config["plant"]["drift"] == {"kind": "ou", "relaxation_s": None}
        assert config["seed"] == 3
        assert config["description"] == "two words"
        assert config["zeno"]["full_acquisition_s"] == 150.0

    @pytest.mark.parametrize("override", ["seed", "seed.x=1", "plant..loops=2", "zeno.thetas=[0,"])
    def test_malformed(self, override):
        with pytest.raises(ConfigError):
            apply_overrides({"seed": 1}, [override])


class TestScenarioConfig:

    def test_defaults(self):
        scenario = parse_scenario({"name": "demo"})
        assert scenario.plant.loops == 13
        assert scenario.plant.tau_loop_ns == 0.483
        assert scenario.zeno.thetas == []
        assert scenario.stabilization.arms == []
        assert scenario.stabilization_duration(full=True) == scenario.duration_s

    def test_durations(self):
        scenario = parse_scenario({"name": "demo", "duration_s": 60, "full_duration_s": 1800,
                                   "zeno": {"acquisition_s": 10, "full_acquisition_s": 150}})
        assert scenario.stabilization_duration() == 60
        assert scenario.stabilization_duration(full=True) == 1800
        assert scenario.acquisition_duration(full=True) == 150

    def test_yaml_boolean_arms(self):
        scenario = parse_scenario(load("name: demo\nstabilization: {arms: [on, off]}"))
        assert scenario.stabilization.arms == ["on", "off"]

    def test_default_labels(self):
        scenario = parse_scenario({"name": "demo", "zeno": {"thetas": [0.0, 0.5]}})
        assert scenario.zeno.arm_labels() == ["theta_0", "theta_1"]
        assert scenario.zeno.arm_phis() == [0.0, 0.0]

    @pytest.mark.parametrize("config", [
        {"name": "demo", "unknown": 1},
        {"name": "demo", "plant": {"loops": 0}},
        {"name": "demo", "plant": {"target_per_pulse": 0.2}},
        {"name": "demo", "plant": {"v_min": 10, "v_max": 10}},
        {"name": "demo", "plant": {"drift": {"kind": "ou"}}},
        {"name": "demo", "plant": {"drift": {"kind": "brownian"}}},
        {"name": "demo", "zeno": {"thetas": [0.0], "labels": ["a", "b"]}},
        {"name": "demo", "stabilization": {"arms": ["on", "on"]}},
        {"name": "demo", "stabilization": {"arms": ["sometimes"]}},
        {"name": "../escape"},
        {"seed": 3},
    ])
    def test_invalid(self, config):
        with pytest.raises(ConfigError):
            parse_scenario(config)

    def test_dump_round_trip(self):
        scenario = parse_scenario({"name": "demo", "zeno": {"thetas": [0.5], "labels": ["x"]}})
        dumped = dump_scenario(scenario)
        json.dumps(dumped)
        assert ScenarioConfig.model_validate(dumped) == scenario


class TestBundled:

    @pytest.mark.parametrize("name", BUNDLED)
    def test_bundled_scenarios_validate(self, name, scenario_dir):
        scenario = load_scenario(str(scenario_dir / (name + ".yml")))
        assert scenario.name == name
        assert load_scenario(name) == scenario

    def test_bundled_names(self):
        assert set(BUNDLED) <= set(bundled_names())
        assert "table2_13loops" in bundled_names("expectations")

    def test_table_scenarios(self):
        s13 = load_scenario("table2_13loops")
        assert s13.plant.loops == 13
        assert s13.zeno.arm_labels() == ["f", "g", "h", "i", "j"]
        s8 = load_scenario("table2_8loops")
        assert s8.plant.loops == 8
        assert s8.zeno.arm_labels() == ["a", "b", "c", "d", "e"]

    def test_overrides_applied_after_loading(self):
        scenario = load_scenario("table2_13loops", ["seed=99", "zeno.acquisition_s=2"])
        assert scenario.seed == 99
        assert scenario.zeno.acquisition_s == 2

    def test_search_path_from_environment(self, temp_dir, monkeypatch):
        folder = temp_dir / "scenarios"
        folder.mkdir()
        (folder / "mine.yml").write_text("name: mine\nseed: 5\n")
        monkeypatch.setenv("ZENOPROTECT_CONFIGS", str(temp_dir))
        assert resolve_config("mine") == str(folder / "mine.yml")
        assert load_scenario("mine").seed == 5

    def test_unknown_name(self):
        with pytest.raises(ConfigError):
            resolve_config("no_such_scenario")
