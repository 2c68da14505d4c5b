"""
Closed-loop stabilization: the SPGD controller driven by the photon
counts of a simulated plant.
"""
import logging

import numpy as np
import pandas as pd

from ..plant import ArrivalRecord
from .controller import SpgdState
from .controller import spgd_step

logger = logging.getLogger(__name__)

PROBE_PLUS = 1
PROBE_MINUS = -1
PROBE_FIXED = 0


class StabilizationTrace:
    """
    Append-only record of a stabilization run.

    Every counter interval adds one row: the interval end time, the
    counts, the voltages applied, the true loop transmission at those
    voltages and which probe the interval served. Each completed SPGD
    step (or fixed-voltage interval) adds one polarimeter sample of the
    protected state at the operating voltages.
    """

    def __init__(self, start_time=0.0, integration_s=0.2):
        self.start_time = float(start_time)
        self.integration_s = float(integration_s)
        self._time = []
        self._counts = []
        self._V = []
        self._transmission = []
        self._probe = []
        self._stokes = []
        self._records = []

    def append(self, time, counts, V, transmission, probe, arrivals=None):
        self._time.append(float(time))
        self._counts.append(int(counts))
        self._V.append(np.array(V, dtype=float))
        self._transmission.append(float(transmission))
        self._probe.append(int(probe))
        if arrivals is not None:
            self._records.append(arrivals)

    def append_stokes(self, stokes):
        self._stokes.append(stokes)

    def __len__(self):
        return len(self._time)

    @property
    def time(self):
        return np.array(self._time)

    @property
    def counts(self):
        return np.array(self._counts, dtype=np.int64)

    @property
    def voltages(self):
        return np.array(self._V).reshape(-1, 4)

    @property
    def transmission(self):
        return np.array(self._transmission)

    @property
    def arrivals(self):
        return ArrivalRecord.concatenate(self._records)

    @property
    def total_counts(self):
        return int(self.counts.sum())

    def stokes_log(self):
        return list(self._stokes)

    def to_frame(self):
        V = self.voltages
        frame = pd.DataFrame({"time_s": self.time, "counts": self.counts})
        for j in range(4):
            frame["V{0}".format(j + 1)] = V[:, j]
        frame["transmission"] = self.transmission
        frame["probe"] = np.array(self._probe, dtype=int)
        return frame

    def to_csv(self, path):
        self.to_frame().to_csv(path, index=False, float_format="%.6g")

    @classmethod
    def from_frame(cls, frame, integration_s):
        """Rebuilds a trace (without Stokes samples) from `to_frame` output."""
        trace = cls(float(frame["time_s"].iloc[0]) - integration_s
                    if len(frame) else 0.0, integration_s)
        V = frame[["V1", "V2", "V3", "V4"]].to_numpy()
        for i, row in enumerate(frame.itertuples(index=False)):
            trace.append(row.time_s, row.counts, V[i], row.transmission,
                         row.probe)
        return trace

    def binned_counts(self, bin_s):
        """
        Counts summed over consecutive `bin_s`-second bins.

        Only bins completely covered by the trace are returned.
        """
        if not bin_s > 0:
            raise ValueError("bin_s must be positive, got {0}".format(bin_s))
        if not self._time:
            return np.empty(0, dtype=np.int64)
        elapsed_start = self.time - self.integration_s - self.start_time
        bins = np.floor(elapsed_start / bin_s + 1e-9).astype(int)
        n_full = int(np.floor((self._time[-1] - self.start_time) / bin_s + 1e-9))
        keep = bins < n_full
        return np.bincount(bins[keep], weights=self.counts[keep],
                           minlength=n_full).astype(np.int64)

    def std_over_mean(self, bin_s=10.0):
        """Standard deviation over mean of the binned counts."""
        binned = self.binned_counts(bin_s)
        if len(binned) < 2 or binned.mean() == 0:
            raise ValueError(
                "Need at least two non-empty {0} s bins, got {1}".format(
                    bin_s, len(binned)))
        return float(binned.std(ddof=1) / binned.mean())


def run_stabilized(plant, cfg, duration, state=None, stabilize=True,
                   record_arrivals=False, stokes_noise_rad=0.0, rng=None):
    """
    Runs the closed loop for `duration` seconds of plant time.

    Each SPGD probe is one fresh counter integration of
    ``cfg.integration_s`` seconds on the plant, and the count itself is
    the objective. With ``stabilize=False`` the voltages stay fixed and
    the counter simply keeps integrating.

    Parameters
    ----------
    plant : PlantState
    cfg : SpgdConfig
    duration : float
        Seconds of plant time. Must be positive.
    state : SpgdState or None, optional
        Starting controller state. Default starts at the plant's analytic
        compensation voltages with a controller stream drawn from `rng`.
    stabilize : bool, optional
        Default is True.
    record_arrivals : bool, optional
        Default is False. Keep the time tags of every counted photon.
    stokes_noise_rad : float, optional
        Default is 0. Polarimeter noise for the Stokes log.
    rng : numpy.random.Generator or int or None, optional
        Seeds the default controller stream.

    Returns
    -------
    tuple(StabilizationTrace, SpgdState)

    """
    if not duration > 0:
        raise ValueError("duration must be positive, got {0}".format(duration))
    if state is None:
        state = SpgdState(plant.analytic_compensation(), rng)
    trace = StabilizationTrace(plant.time, cfg.integration_s)
    T = cfg.integration_s

    def measure(V, probe):
        transmission = plant.loop_transmission(V)
        result = plant.detect(V, T, record=record_arrivals)
        trace.append(plant.time, result.counts, V, transmission, probe,
                     result.arrivals)
        return result.counts

    n_steps = int(np.floor(duration / (2 * T if stabilize else T) + 1e-9))
    for _ in range(n_steps):
        if stabilize:
            probes = iter((PROBE_PLUS, PROBE_MINUS))
            state = spgd_step(state, cfg, lambda V: measure(V, next(probes)))
        else:
            measure(state.V, PROBE_FIXED)
        trace.append_stokes(plant.protected_stokes(state.V, stokes_noise_rad))
    logger.info(
        "Stabilization {0} for {1:.1f} s: {2} intervals, {3} counts".format(
            "on" if stabilize else "off", duration, len(trace),
            trace.total_counts))
    return trace, state
