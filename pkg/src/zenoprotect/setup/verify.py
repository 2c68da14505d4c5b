"""
Checks a finished run against tolerance-tagged expectations.

An expectations file names the scenario it applies to and lists checks on
the flat metrics of ``summary.json``::

    scenario: table2_13loops
    checks:
      - metric: pm.h.t_m_ns
        expected: 3.13
        tolerance: 0.10
      - metric: pm.h.counts
        min: 30000

Each check uses either ``expected`` with ``tolerance`` or one or both of
``min`` and ``max``.
"""
from collections import namedtuple
import json
import logging
import math
import os
from typing import List, Optional

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, ValidationError
from pydantic import model_validator

from ..utils import file_checksum
from .config import ConfigError
from .config import load_path
from .run import MANIFEST_FILE
from .run import SUMMARY_FILE

logger = logging.getLogger(__name__)


CheckResult = namedtuple("CheckResult", ["name", "passed", "detail"])
"""
Outcome of one verification check.

Parameters
----------
name : str
passed : bool
detail : str
    Human-readable diagnostic.

"""


class Check(BaseModel):
    model_config = ConfigDict(extra="forbid")

    metric: str
    expected: Optional[float] = None
    tolerance: Optional[float] = Field(None, ge=0)
    min: Optional[float] = None
    max: Optional[float] = None

    @model_validator(mode="after")
    def _one_form(self):
        has_target = self.expected is not None
        if has_target != (self.tolerance is not None):
            raise ValueError("{0}: expected and tolerance go together".format(
                self.metric))
        if not has_target and self.min is None and self.max is None:
            raise ValueError("{0}: needs expected/tolerance or min/max".format(
                self.metric))
        return self

    def evaluate(self, value):
        if value is None or isinstance(value, bool) or not isinstance(
                value, (int, float)) or math.isnan(value):
            return CheckResult(self.metric, False,
                               "metric is missing or not numeric: {0!r}".format(value))
        failures = []
        if self.expected is not None and abs(value - self.expected) > self.tolerance:
            failures.append("|{0:.6g} - {1:.6g}| > {2:.6g}".format(
                value, self.expected, self.tolerance))
        if self.min is not None and value < self.min:
            failures.append("{0:.6g} < min {1:.6g}".format(value, self.min))
        if self.max is not None and value > self.max:
            failures.append("{0:.6g} > max {1:.6g}".format(value, self.max))
        if failures:
            return CheckResult(self.metric, False, "; ".join(failures))
        return CheckResult(self.metric, True, "{0:.6g}".format(value))


class Expectations(BaseModel):
    model_config = ConfigDict(extra="forbid")

    scenario: str
    checks: List[Check] = []


class VerifyReport:
    """Ordered check results of one verification."""

    def __init__(self, scenario, results=None):
        self.scenario = scenario
        self.results = list(results or [])

    def add(self, name, passed, detail):
        self.results.append(CheckResult(name, bool(passed), detail))

    @property
    def passed(self):
        return bool(self.results) and all(r.passed for r in self.results)

    @property
    def failures(self):
        return [r for r in self.results if not r.passed]

    def to_frame(self):
        return pd.DataFrame(self.results, columns=list(CheckResult._fields))

    def format(self):
        lines = ["Verification of {0!r}: {1}".format(
            self.scenario, "PASS" if self.passed else "FAIL")]
        for r in self.results:
            lines.append("  [{0}] {1}: {2}".format(
                "ok" if r.passed else "FAIL", r.name, r.detail))
        return "\n".join(lines)


def load_expectations(path):
    """
    Raises
    ------
    ConfigError
        If the file does not parse or validate.

    """
    try:
        return Expectations.model_validate(load_path(path))
    except ValidationError as e:
        raise ConfigError("Invalid expectations file {0}:\n{1}".format(path, e))


def _run_dir(manifest_path):
    if os.path.isdir(manifest_path):
        return manifest_path, os.path.join(manifest_path, MANIFEST_FILE)
    return os.path.dirname(manifest_path) or ".", manifest_path


def verify(manifest_path, expectations):
    """
    Verifies a run directory (or its manifest) against expectations.

    Missing or altered artifacts, a scenario name that differs from the
    expectations and failed metric checks are all reported as failures;
    nothing here raises for a failed check.

    Parameters
    ----------
    manifest_path : str
        ``manifest.json`` or the run directory holding it.
    expectations : Expectations

    Returns
    -------
    VerifyReport

    """
    run_dir, manifest_file = _run_dir(manifest_path)
    report = VerifyReport(expectations.scenario)
    if not os.path.isfile(manifest_file):
        report.add("manifest", False, "missing {0}".format(manifest_file))
        return report
    with open(manifest_file) as f:
        manifest = json.load(f)

    name = manifest.get("scenario")
    report.add("scenario", name == expectations.scenario,
               "manifest is for {0!r}, expectations for {1!r}".format(
                   name, expectations.scenario))

    for artifact in manifest.get("artifacts", []):
        path = os.path.join(run_dir, artifact["path"])
        if not os.path.isfile(path):
            report.add(artifact["path"], False, "missing artifact")
            continue
        digest = file_checksum(path)
        report.add(artifact["path"], digest == artifact["sha256"],
                   "checksum ok" if digest == artifact["sha256"]
                   else "checksum mismatch")

    summary_path = os.path.join(run_dir, SUMMARY_FILE)
    if not os.path.isfile(summary_path):
        report.add(SUMMARY_FILE, False, "missing artifact")
        return report
    with open(summary_path) as f:
        summary = json.load(f)
    for check in expectations.checks:
        report.results.append(check.evaluate(summary.get(check.metric)))

    level = logging.INFO if report.passed else logging.WARNING
    logger.log(level, "{0} of {1} checks passed for {2!r}".format(
        len(report.results) - len(report.failures), len(report.results),
        expectations.scenario))
    return report
