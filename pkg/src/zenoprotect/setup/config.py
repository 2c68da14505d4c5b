"""
Utilities for loading scenario configuration files.

Scenarios are YAML (or JSON) documents with one section per simulated
component. The raw mapping is loaded with a `SafeLoader` that also reads
scientific notation such as ``1e9`` as a float, string values have
``${VAR}`` and ``~`` expanded, and the result is validated into pydantic
models that reject unknown keys.
"""
import json
import logging
import os
import re
from typing import List, Optional, Tuple

import numpy as np
import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError
from pydantic import field_validator, model_validator

logger = logging.getLogger(__name__)

SCIENTIFIC_NOTATION_REGEXP = r"^[\-\+]?(\d+\.?\d*|\d*\.?\d+)?[eE][\-\+]?\d+$"
IS_INITIALIZED = False

STABILIZATION_ARMS = ("on", "off")


class ConfigError(ValueError):
    """A scenario file that cannot be loaded or does not validate."""


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class DriftSettings(_Section):
    """Birefringence drift of the DGD fiber."""
    kind: str = "random_walk"
    scale: float = Field(0.1, ge=0)
    step_rate_hz: float = Field(10.0, gt=0)
    relaxation_s: Optional[float] = Field(None, gt=0)
    phase: float = 0.0

    @field_validator("kind")
    @classmethod
    def _known_kind(cls, value):
        if value not in ("random_walk", "ou"):
            raise ValueError("unknown drift kind {0!r}".format(value))
        return value

    @model_validator(mode="after")
    def _relaxation_for_ou(self):
        if self.kind == "ou" and self.relaxation_s is None:
            raise ValueError("ou drift needs relaxation_s")
        return self


class PlantConfig(_Section):
    """Loops, timing, photon budget, squeezers and drift of the plant."""
    loops: int = Field(13, ge=1)
    tau_loop_ns: float = Field(0.483, gt=0)
    pulse_fwhm_ns: float = Field(2.5, gt=0)
    mu0: float = Field(1e9, ge=0)
    loss_db_per_loop: float = Field(7.0, ge=0)
    rep_rate_hz: float = Field(50e3, gt=0)
    target_per_pulse: float = Field(0.08, gt=0, le=0.1)
    jitter_ps: float = Field(100.0, ge=0)
    tdc_ps: float = Field(20.0, gt=0)
    dark_rate_hz: float = Field(25.0, ge=0)
    background_rate_hz: float = Field(0.0, ge=0)
    window_ns: Tuple[float, float] = (-10.0, 20.0)
    squeezer_gain: float = Field(np.pi / 10, gt=0)
    v_min: float = 0.0
    v_max: float = 150.0
    drift: DriftSettings = DriftSettings()

    @model_validator(mode="after")
    def _ordered_ranges(self):
        if not self.v_max > self.v_min:
            raise ValueError("empty voltage range [{0}, {1}]".format(
                self.v_min, self.v_max))
        if not self.window_ns[1] > self.window_ns[0]:
            raise ValueError("empty TDC window {0}".format(self.window_ns))
        return self


class SpgdSettings(_Section):
    """SPGD constants; probe integration time is shared with the counter."""
    C: float = Field(0.2, gt=0)
    gamma: float = Field(0.0063, gt=0)
    g_max: float = Field(2.0, gt=0)
    integration_s: float = Field(0.2, gt=0)


class ZenoSettings(_Section):
    """
    Protective-measurement arms: one prepared state per entry of `thetas`.

    `acquisition_s` is the desk-scale acquisition per state and
    `full_acquisition_s` the one used with ``--full``.
    """
    thetas: List[float] = []
    phis: Optional[List[float]] = None
    labels: Optional[List[str]] = None
    acquisition_s: float = Field(10.0, gt=0)
    full_acquisition_s: float = Field(150.0, gt=0)

    @model_validator(mode="after")
    def _matching_lengths(self):
        for name in ("phis", "labels"):
            values = getattr(self, name)
            if values is not None and len(values) != len(self.thetas):
                raise ValueError("{0} has {1} entries for {2} thetas".format(
                    name, len(values), len(self.thetas)))
        return self

    def arm_labels(self):
        if self.labels is not None:
            return list(self.labels)
        return ["theta_{0}".format(i) for i in range(len(self.thetas))]

    def arm_phis(self):
        return list(self.phis) if self.phis is not None else [0.0] * len(self.thetas)


class StabilizationSettings(_Section):
    """Stabilization arms with and without feedback."""
    arms: List[str] = []
    theta: float = float(np.pi / 4)
    phi: float = 0.0
    bin_s: float = Field(10.0, gt=0)
    stokes_noise_rad: float = Field(0.0, ge=0)

    @field_validator("arms", mode="before")
    @classmethod
    def _yaml_booleans(cls, value):
        # unquoted on/off load as YAML 1.1 booleans
        if isinstance(value, list):
            return [{True: "on", False: "off"}.get(v, v)
                    if isinstance(v, bool) else v for v in value]
        return value

    @field_validator("arms")
    @classmethod
    def _known_arms(cls, value):
        for arm in value:
            if arm not in STABILIZATION_ARMS:
                raise ValueError("unknown stabilization arm {0!r}".format(arm))
        if len(set(value)) != len(value):
            raise ValueError("repeated stabilization arm in {0}".format(value))
        return value


class AnalysisSettings(_Section):
    bin_width_ps: float = Field(20.0, gt=0)
    window_fraction: float = Field(0.005, gt=0, lt=1)
    fidelity_bins: int = Field(50, ge=1)


class ScenarioConfig(_Section):
    """Root scenario schema."""
    name: str
    description: str = ""
    seed: int = Field(0, ge=0)
    duration_s: float = Field(60.0, gt=0)
    full_duration_s: Optional[float] = Field(None, gt=0)
    output_dir: Optional[str] = None
    plant: PlantConfig = PlantConfig()
    spgd: SpgdSettings = SpgdSettings()
    zeno: ZenoSettings = ZenoSettings()
    stabilization: StabilizationSettings = StabilizationSettings()
    analysis: AnalysisSettings = AnalysisSettings()

    @field_validator("name")
    @classmethod
    def _plain_name(cls, value):
        if not re.match(r"^[A-Za-z0-9_\-\.]+$", value):
            raise ValueError("scenario name {0!r} must be a plain file stem".format(value))
        return value

    def stabilization_duration(self, full=False):
        if full and self.full_duration_s is not None:
            return self.full_duration_s
        return self.duration_s

    def acquisition_duration(self, full=False):
        return self.zeno.full_acquisition_s if full else self.zeno.acquisition_s


def _initialize():
    """Registers the scientific-notation float resolver on `SafeLoader`."""
    global IS_INITIALIZED
    yaml.add_constructor("!float", _constructor_float, Loader=yaml.SafeLoader)
    pattern = re.compile(SCIENTIFIC_NOTATION_REGEXP)
    yaml.add_implicit_resolver("!float", pattern, Loader=yaml.SafeLoader)
    IS_INITIALIZED = True


def _constructor_float(loader, node):
    value = loader.construct_scalar(node)
    return float(value)


def _preprocess(string, environ=None):
    """
    Replaces ``${VARNAME}`` with ``os.environ['VARNAME']`` and expands
    ``~`` to the user's home directory.

    Parameters
    ----------
    string : str
    environ : dict, optional
        Takes precedence over `os.environ`.

    Raises
    ------
    ConfigError
        If a ``${`` is not closed or names an unset variable.

    """
    environ = environ or {}
    split = string.split("${")
    rval = [split[0]]
    for candidate in split[1:]:
        subsplit = candidate.split("}")
        if len(subsplit) < 2:
            raise ConfigError("Open ${{ not followed by }} in {0!r}".format(string))
        varname = subsplit[0]
        if varname in environ:
            rval.append(str(environ[varname]))
        elif varname in os.environ:
            rval.append(os.environ[varname])
        else:
            raise ConfigError("Environment variable {0!r} is not set".format(varname))
        rval.append("}".join(subsplit[1:]))
    return os.path.expanduser("".join(rval))


def expand(value, environ=None):
    """Applies `_preprocess` to every string in a nested structure."""
    if isinstance(value, dict):
        return {k: expand(v, environ) for k, v in value.items()}
    if isinstance(value, list):
        return [expand(v, environ) for v in value]
    if isinstance(value, str):
        return _preprocess(value, environ)
    return value


def load(stream, environ=None):
    """
    Loads a YAML mapping from a string or file-like object.

    Parameters
    ----------
    stream : str or object
        Either a string containing YAML or a file-like object.
    environ : dict, optional
        Extra values for ``${FOO}`` substitutions.

    Returns
    -------
    dict

    """
    if not IS_INITIALIZED:
        _initialize()
    string = stream if isinstance(stream, str) else stream.read()
    try:
        data = yaml.load(string, Loader=yaml.SafeLoader)
    except yaml.YAMLError as e:
        raise ConfigError("Invalid YAML: {0}".format(e))
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError("Scenario must be a mapping, got {0}".format(
            type(data).__name__))
    return expand(data, environ)


def load_path(path, environ=None):
    """
    Loads a raw scenario mapping from a ``.yml``, ``.yaml`` or ``.json`` file.

    Raises
    ------
    ConfigError
        If the file is missing, has an unsupported extension or does not
        parse.

    """
    _, ext = os.path.splitext(path)
    if not os.path.isfile(path):
        raise ConfigError("No such scenario file: {0}".format(path))
    with open(path, "r") as f:
        if ext.lower() in (".yaml", ".yml"):
            return load(f, environ)
        if ext.lower() == ".json":
            try:
                data = json.load(f)
            except json.JSONDecodeError as e:
                raise ConfigError("Invalid JSON in {0}: {1}".format(path, e))
            if not isinstance(data, dict):
                raise ConfigError("Scenario must be a mapping: {0}".format(path))
            return expand(data, environ)
    raise ConfigError("Unsupported file extension: {0}".format(ext))


def _typed(value):
    lowered = value.lower()
    if lowered == "true":
        return True
    if lowered == "false":
        return False
    if lowered in ("null", "none"):
        return None
    for cast in (int, float):
        try:
            return cast(value)
        except ValueError:
            pass
    if value.startswith("["):
        try:
            return yaml.safe_load(value)
        except yaml.YAMLError:
            raise ConfigError("Malformed list override {0!r}".format(value))
    return value


def apply_override(config, param_path, value):
    """
    Sets ``section.param`` in a raw mapping from its string form.

    Booleans, ``null``, integers, floats and flow lists such as
    ``[0.0, 0.785]`` are parsed; anything else stays a string.
    """
    keys = param_path.split(".")
    if not all(keys):
        raise ConfigError("Malformed override key {0!r}".format(param_path))
    current = config
    for key in keys[:-1]:
        if key not in current or current[key] is None:
            current[key] = {}
        if not isinstance(current[key], dict):
            raise ConfigError("Cannot override {0!r}: {1!r} is not a section".format(
                param_path, key))
        current = current[key]
    current[keys[-1]] = _typed(value)


def apply_overrides(config, overrides):
    """Applies ``key=value`` strings in order."""
    for o in overrides or ():
        if "=" not in o:
            raise ConfigError("Override {0!r} is not of the form key=value".format(o))
        param_path, value = o.split("=", 1)
        apply_override(config, param_path.strip(), value.strip())
        logger.info("Applied override: {0}={1}".format(param_path, value))
    return config


def parse_scenario(config):
    """
    Validates a raw mapping into a `ScenarioConfig`.

    Raises
    ------
    ConfigError

    """
    try:
        return ScenarioConfig.model_validate(config)
    except ValidationError as e:
        raise ConfigError("Invalid scenario configuration:\n{0}".format(e))


def config_dirs():
    """
    Directories searched for bundled configurations, in order:
    ``$ZENOPROTECT_CONFIGS``, ``./configs`` and the repository's
    ``configs`` next to ``src``.
    """
    dirs = []
    if os.environ.get("ZENOPROTECT_CONFIGS"):
        dirs.append(os.environ["ZENOPROTECT_CONFIGS"])
    dirs.append(os.path.join(os.getcwd(), "configs"))
    dirs.append(os.path.abspath(os.path.join(
        os.path.dirname(__file__), "..", "..", "..", "configs")))
    return dirs


def resolve_config(name_or_path, kind="scenarios"):
    """
    A file path, or the bundled ``configs/<kind>/<name>.yml``.

    Raises
    ------
    ConfigError
        If neither exists.

    """
    if os.path.isfile(name_or_path):
        return name_or_path
    stem = os.path.splitext(os.path.basename(name_or_path))[0]
    for base in config_dirs():
        for ext in (".yml", ".yaml", ".json"):
            candidate = os.path.join(base, kind, stem + ext)
            if os.path.isfile(candidate):
                return candidate
    raise ConfigError("No {0} file or bundled name {1!r}".format(
        kind[:-1], name_or_path))


def bundled_names(kind="scenarios"):
    names = set()
    for base in config_dirs():
        folder = os.path.join(base, kind)
        if os.path.isdir(folder):
            names.update(os.path.splitext(n)[0] for n in os.listdir(folder)
                         if n.endswith((".yml", ".yaml", ".json")))
    return sorted(names)


def load_scenario(path, overrides=(), environ=None):
    """Loads, overrides and validates a scenario file or bundled name."""
    config = load_path(resolve_config(path), environ)
    apply_overrides(config, overrides)
    return parse_scenario(config)


def dump_scenario(scenario):
    """The validated scenario as a plain, JSON-serializable mapping."""
    return scenario.model_dump(mode="json")
