"""
Utilities for running scenarios: building the simulated plant from a
validated configuration, running the stabilization and
protective-measurement arms, and writing artifacts with a checksummed
manifest.

Every arm draws its own plant and controller streams from the scenario
seed, so arms may run in any order or in parallel with identical output.
"""
from concurrent.futures import ProcessPoolExecutor
import json
import logging
import os

import numpy as np
import pandas as pd

from .. import analysis
from ..analysis import plots
from ..plant import DetectionConfig
from ..plant import DriftProcess
from ..plant import PlantState
from ..plant import SqueezerBank
from ..polarization import PolarizationState
from ..spgd import SpgdConfig
from ..spgd import StabilizationTrace
from ..spgd import run_stabilized
from ..utils import file_checksum
from ..utils import initialize_logger
from ..version import __version__
from .config import STABILIZATION_ARMS
from .config import ScenarioConfig
from .config import dump_scenario

logger = logging.getLogger(__name__)

MANIFEST_FILE = "manifest.json"
SUMMARY_FILE = "summary.json"
SCENARIO_FILE = "scenario.json"
LOG_FILE = "run.log"
FIGURES_DIR = "figures"

_UNTRACKED = (MANIFEST_FILE, LOG_FILE)


def arm_seeds(seed, n_pm_arms):
    """
    Independent seed sequences for every arm of a scenario.

    Returns
    -------
    tuple(dict(str, numpy.random.SeedSequence), list(numpy.random.SeedSequence))
        Stabilization arms by name, then one sequence per PM arm.

    """
    stabilization_root, pm_root = np.random.SeedSequence(seed).spawn(2)
    stabilization = dict(zip(STABILIZATION_ARMS,
                             stabilization_root.spawn(len(STABILIZATION_ARMS))))
    return stabilization, pm_root.spawn(n_pm_arms)


def build_plant(scenario, state, seed_sequence):
    """
    Plant and controller configuration for one arm.

    Parameters
    ----------
    scenario : ScenarioConfig
    state : PolarizationState
    seed_sequence : numpy.random.SeedSequence

    Returns
    -------
    tuple(PlantState, SpgdConfig, numpy.random.Generator)
        The plant, the controller constants and the controller stream.

    """
    p = scenario.plant
    plant_stream, controller_stream = seed_sequence.spawn(2)
    bank = SqueezerBank.default(p.squeezer_gain, (p.v_min, p.v_max))
    drift = DriftProcess(p.drift.kind, p.drift.scale, p.drift.step_rate_hz,
                         p.drift.relaxation_s, phase=p.drift.phase)
    detection = DetectionConfig(
        mu0=p.mu0, loss_db_per_loop=p.loss_db_per_loop,
        rep_rate_hz=p.rep_rate_hz, target_per_pulse=p.target_per_pulse,
        jitter_ps=p.jitter_ps, tdc_ps=p.tdc_ps, dark_rate_hz=p.dark_rate_hz,
        background_rate_hz=p.background_rate_hz,
        integration_s=scenario.spgd.integration_s, window_ns=p.window_ns)
    plant = PlantState(state, p.loops, squeezers=bank, drift=drift,
                       detection=detection, tau_loop_ns=p.tau_loop_ns,
                       pulse_fwhm_ns=p.pulse_fwhm_ns,
                       seed=[int(x) for x in plant_stream.generate_state(4)])
    s = scenario.spgd
    cfg = SpgdConfig.for_bank(bank, s.C, s.gamma, s.g_max, s.integration_s)
    return plant, cfg, np.random.default_rng(controller_stream)


def run_stabilization_arm(scenario, arm, seed_sequence, full=False):
    """Closed loop with (``on``) or without (``off``) feedback."""
    st = scenario.stabilization
    plant, cfg, rng = build_plant(
        scenario, PolarizationState(st.theta, st.phi), seed_sequence)
    trace, _ = run_stabilized(plant, cfg, scenario.stabilization_duration(full),
                              stabilize=(arm == "on"),
                              stokes_noise_rad=st.stokes_noise_rad, rng=rng)
    return trace


def run_pm_arm(scenario, index, seed_sequence, full=False):
    """
    Stabilized acquisition of time-tagged photons for one prepared state.

    Returns
    -------
    tuple(str, ArrivalRecord, PmResult)

    """
    z = scenario.zeno
    label = z.arm_labels()[index]
    state = PolarizationState(z.thetas[index], z.arm_phis()[index])
    plant, cfg, rng = build_plant(scenario, state, seed_sequence)
    trace, _ = run_stabilized(plant, cfg, scenario.acquisition_duration(full),
                              record_arrivals=True, rng=rng)
    record = trace.arrivals
    a = scenario.analysis
    result = analysis.analyze_arrivals(
        record.time_ns, plant.loops, plant.tau_loop_ns,
        bin_width_ps=a.bin_width_ps, label=label, fraction=a.window_fraction)
    logger.info("PM arm {0!r}: {1}".format(label, result))
    return label, record, result


def _pm_arm_job(payload):
    config, index, seed_sequence, full = payload
    return run_pm_arm(ScenarioConfig.model_validate(config), index,
                      seed_sequence, full)


def _write_json(data, path):
    with open(path, "w") as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write("\n")


def _stokes_frame(stokes_log):
    return pd.DataFrame([tuple(s) for s in stokes_log],
                        columns=["s1", "s2", "s3"])


def write_manifest(output_dir, scenario, full):
    """
    Checksums every artifact in `output_dir` except the log and the
    manifest itself.

    Returns
    -------
    dict

    """
    artifacts = []
    for root, _, files in os.walk(output_dir):
        for name in files:
            path = os.path.join(root, name)
            rel = os.path.relpath(path, output_dir).replace(os.sep, "/")
            if rel in _UNTRACKED or rel.startswith(FIGURES_DIR + "/"):
                continue
            artifacts.append({"path": rel, "sha256": file_checksum(path)})
    manifest = {"scenario": scenario.name,
                "seed": scenario.seed,
                "full": bool(full),
                "version": __version__,
                "artifacts": sorted(artifacts, key=lambda a: a["path"])}
    _write_json(manifest, os.path.join(output_dir, MANIFEST_FILE))
    return manifest


def run_scenario(scenario, output_dir=None, full=False, workers=1,
                 verbosity=1):
    """
    Runs every arm of a scenario and writes its artifacts.

    Parameters
    ----------
    scenario : ScenarioConfig
    output_dir : str or None, optional
        Default is the scenario's `output_dir`, else ``runs/<name>``.
    full : bool, optional
        Default is False. Use the full-length durations.
    workers : int, optional
        Default is 1. Processes for the PM arms.
    verbosity : int, optional
        Default is 1.

    Returns
    -------
    dict
        The manifest.

    """
    if output_dir is None:
        output_dir = scenario.output_dir or os.path.join("runs", scenario.name)
    os.makedirs(output_dir, exist_ok=True)
    initialize_logger(os.path.join(output_dir, LOG_FILE), verbosity)
    logger.info("Running scenario {0!r} (seed {1}, full={2}) into {3}".format(
        scenario.name, scenario.seed, full, output_dir))

    config = dump_scenario(scenario)
    config["output_dir"] = None
    _write_json(config, os.path.join(output_dir, SCENARIO_FILE))

    summary = {"scenario": scenario.name, "seed": scenario.seed,
               "full": bool(full), "warnings": []}

    probe, _, _ = build_plant(
        scenario, PolarizationState.horizontal(), np.random.SeedSequence(0))
    budget = probe.loss_budget()
    for key, value in budget.items():
        summary["loss_budget.{0}".format(key)] = value
    if not budget["feasible"]:
        summary["warnings"].append(
            "optimum count rate {0:.1f}/s is below 500/s".format(
                budget["optimum_rate_hz"]))

    stabilization_seeds, pm_seeds = arm_seeds(scenario.seed,
                                              len(scenario.zeno.thetas))
    st = scenario.stabilization
    traces = {}
    for arm in st.arms:
        trace = run_stabilization_arm(scenario, arm, stabilization_seeds[arm], full)
        traces[arm] = trace
        trace.to_csv(os.path.join(output_dir, "trace_{0}.csv".format(arm)))
        _stokes_frame(trace.stokes_log()).to_csv(
            os.path.join(output_dir, "stokes_{0}.csv".format(arm)),
            index=False, float_format="%.9f")
        summary.update(_stabilization_metrics(arm, trace, st.bin_s))
        if arm == "on" and len(trace.stokes_log()) >= 2:
            stats = analysis.fidelity_stats(trace.stokes_log(),
                                            bins=scenario.analysis.fidelity_bins)
            summary["fidelity.mean"] = stats.mean_fidelity
            summary["fidelity.fraction_above_099"] = stats.fraction_above_099
            summary["fidelity.fraction_above_098"] = stats.fraction_above_098
    if "on" in traces and "off" in traces:
        on = summary.get("stabilization.on.std_over_mean")
        off = summary.get("stabilization.off.std_over_mean")
        if on is not None and off is not None and on > 0:
            summary["stabilization.off_over_on"] = off / on
    summary["stabilization.integration_s"] = scenario.spgd.integration_s
    summary["stabilization.bin_s"] = st.bin_s

    results = []
    if scenario.zeno.thetas:
        jobs = [(config, i, seq, full) for i, seq in enumerate(pm_seeds)]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                outcomes = list(pool.map(_pm_arm_job, jobs))
        else:
            outcomes = [_pm_arm_job(job) for job in jobs]
        for label, record, result in outcomes:
            record.to_csv(os.path.join(output_dir, "arrivals_{0}.csv".format(label)))
            results.append(result)
            for key, value in result.to_dict().items():
                if key != "label":
                    summary["pm.{0}.{1}".format(label, key)] = value
        analysis.pm_table(results).to_csv(
            os.path.join(output_dir, "pm_table.csv"), index=False,
            float_format="%.6f")
        _write_json([r.to_dict() for r in results],
                    os.path.join(output_dir, "pm_results.json"))

    _write_json(summary, os.path.join(output_dir, SUMMARY_FILE))
    manifest = write_manifest(output_dir, scenario, full)
    logger.info("Wrote {0} artifacts to {1}".format(
        len(manifest["artifacts"]), output_dir))
    return manifest


def _stabilization_metrics(arm, trace, bin_s):
    prefix = "stabilization.{0}.".format(arm)
    metrics = {prefix + "total_counts": trace.total_counts,
               prefix + "intervals": len(trace)}
    binned = trace.binned_counts(bin_s)
    if len(binned) >= 2 and binned.mean() > 0:
        metrics[prefix + "std_over_mean"] = trace.std_over_mean(bin_s)
        metrics[prefix + "mean_counts_per_bin"] = float(binned.mean())
    else:
        logger.warning("Stabilization arm {0!r} is too short for {1} s bins".format(
            arm, bin_s))
    return metrics


def load_summary(run_dir):
    with open(os.path.join(run_dir, SUMMARY_FILE)) as f:
        return json.load(f)


def emit_figures(run_dir, render=False):
    """
    Writes plot tables (and optionally SVGs) for a finished run.

    Tables go to ``<run_dir>/figures``: binned count traces, the fidelity
    histogram of the stabilized arm, raw arrival histograms and windowed
    arrival probabilities. Tables whose inputs are missing are skipped.

    Returns
    -------
    list(str)
        Paths written.

    """
    summary = load_summary(run_dir)
    figures_dir = os.path.join(run_dir, FIGURES_DIR)
    os.makedirs(figures_dir, exist_ok=True)
    tables = {}

    traces = {}
    for arm in STABILIZATION_ARMS:
        path = os.path.join(run_dir, "trace_{0}.csv".format(arm))
        if os.path.isfile(path):
            traces[arm] = StabilizationTrace.from_frame(
                pd.read_csv(path), summary["stabilization.integration_s"])
    if traces:
        tables[plots.COUNT_TRACES] = plots.count_trace_frame(
            traces, summary["stabilization.bin_s"])

    stokes_path = os.path.join(run_dir, "stokes_on.csv")
    if os.path.isfile(stokes_path):
        frame = pd.read_csv(stokes_path)
        if len(frame) >= 2:
            tables[plots.FIDELITY_HISTOGRAM] = plots.fidelity_frame(
                [tuple(row) for row in frame[["s1", "s2", "s3"]].to_numpy()])

    results_path = os.path.join(run_dir, "pm_results.json")
    if os.path.isfile(results_path):
        with open(results_path) as f:
            results = json.load(f)
        arrivals = {}
        for r in results:
            frame = pd.read_csv(os.path.join(
                run_dir, "arrivals_{0}.csv".format(r["label"])))
            arrivals[r["label"]] = frame["arrival_time_ns"].to_numpy()
        tables[plots.ARRIVAL_HISTOGRAMS] = plots.arrival_histogram_frame(arrivals)
        tables[plots.WINDOWED_PROBABILITIES] = plots.windowed_probability_frame(
            arrivals, {r["label"]: r["t_m_ns"] for r in results})

    written = []
    for kind, frame in tables.items():
        path = os.path.join(figures_dir, "{0}.csv".format(kind))
        frame.to_csv(path, index=False, float_format="%.6g")
        written.append(path)
        if render:
            svg = os.path.join(figures_dir, "{0}.svg".format(kind))
            plots.render_figure(frame, kind, svg)
            written.append(svg)
    logger.info("Emitted {0} figure files into {1}".format(len(written), figures_dir))
    return written
