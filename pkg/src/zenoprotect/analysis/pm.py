"""
Protective-measurement estimates from windowed arrival histograms.

The mean arrival time t_M maps onto the polarization expectation value
through the full delay range ``tau_max = ℓ tau_loop``: a V photon arrives
at 0 and an H photon at tau_max, so ``<O> = 2 t_M / tau_max - 1``.
"""
import logging

import numpy as np
import pandas as pd

from .histogram import ArrivalHistogram
from .histogram import WINDOW_FRACTION
from .histogram import moments
from .histogram import window

logger = logging.getLogger(__name__)

EXPECTATION_SLACK = 0.05

PM_TABLE_COLUMNS = ["label", "loops", "t_m_ns", "std_ns", "expectation",
                    "sigma_pm", "sigma_sm", "r", "counts", "tau_max_ns"]


def tau_max(loops, tau_loop_ns):
    if loops < 1 or not tau_loop_ns > 0:
        raise ValueError(
            "Need loops >= 1 and tau_loop > 0, got {0} and {1}".format(
                loops, tau_loop_ns))
    return loops * tau_loop_ns


def expectation(t_m, loops, tau_loop):
    """<O> = 2 t_M / (ℓ tau_loop) - 1."""
    return 2 * t_m / tau_max(loops, tau_loop) - 1


def sigma_pm(std, loops, tau_loop):
    """Pointer spread rescaled to the [-1, 1] range of <O>."""
    return 2 * std / tau_max(loops, tau_loop)


def sigma_sm(o):
    """
    Strong-measurement uncertainty sqrt(1 - <O>^2).

    Estimates beyond ±1 are clipped, with a warning.
    """
    if abs(o) > 1:
        logger.warning(
            "Clipping <O> = {0:.4f} to ±1 for the strong-measurement "
            "uncertainty".format(o))
        o = float(np.clip(o, -1.0, 1.0))
    return float(np.sqrt(1 - o ** 2))


def relative_performance(sigma_sm_value, sigma_pm_value):
    """
    R = sigma_SM / sigma_PM.

    An eigenstate (sigma_SM = 0) gives 0 regardless of sigma_PM.

    Raises
    ------
    ValueError
        If sigma_PM is 0 while sigma_SM is not.

    """
    if sigma_sm_value == 0:
        return 0.0
    if sigma_pm_value <= 0:
        raise ValueError(
            "sigma_pm must be positive when sigma_sm = {0}".format(sigma_sm_value))
    return sigma_sm_value / sigma_pm_value


class PmResult:
    """
    One protective-measurement estimate.

    Parameters
    ----------
    t_m_ns, std_ns : float
        Windowed mean arrival time and standard deviation.
    loops : int
    tau_loop_ns : float
    counts : int
        Photons inside the window.
    label : str, optional

    Attributes
    ----------
    expectation : float
        The raw estimate of <O>, not clipped.
    sigma_pm, sigma_sm, r : float
    tau_max_ns : float

    """

    def __init__(self, t_m_ns, std_ns, loops, tau_loop_ns, counts, label=""):
        self.t_m_ns = float(t_m_ns)
        self.std_ns = float(std_ns)
        self.loops = int(loops)
        self.tau_loop_ns = float(tau_loop_ns)
        self.tau_max_ns = tau_max(self.loops, self.tau_loop_ns)
        self.counts = int(counts)
        self.label = label
        self.expectation = expectation(self.t_m_ns, self.loops, self.tau_loop_ns)
        self.sigma_pm = sigma_pm(self.std_ns, self.loops, self.tau_loop_ns)
        self.sigma_sm = sigma_sm(self.expectation)
        self.r = relative_performance(self.sigma_sm, self.sigma_pm)
        if abs(self.expectation) > 1 + EXPECTATION_SLACK:
            logger.warning(
                "<O> = {0:.3f} for {1!r} is outside ±{2}; check the time "
                "origin and tau_loop".format(
                    self.expectation, label, 1 + EXPECTATION_SLACK))

    def to_dict(self):
        return {"label": self.label,
                "loops": self.loops,
                "t_m_ns": self.t_m_ns,
                "std_ns": self.std_ns,
                "expectation": self.expectation,
                "sigma_pm": self.sigma_pm,
                "sigma_sm": self.sigma_sm,
                "r": self.r,
                "counts": self.counts,
                "tau_max_ns": self.tau_max_ns}

    def __repr__(self):
        return ("PmResult(label={0!r}, t_m_ns={1:.3f}, std_ns={2:.3f}, "
                "expectation={3:.3f}, sigma_pm={4:.3f}, r={5:.2f})").format(
                    self.label, self.t_m_ns, self.std_ns, self.expectation,
                    self.sigma_pm, self.r)


def analyze_histogram(h, loops, tau_loop_ns, label="",
                      fraction=WINDOW_FRACTION):
    """Windows, normalizes and reduces a raw histogram to a PmResult."""
    windowed = window(h, fraction)
    counts = windowed.total
    t_m, std = moments(windowed.normalize())
    return PmResult(t_m, std, loops, tau_loop_ns, counts, label)


def analyze_arrivals(times_ns, loops, tau_loop_ns, bin_width_ps=20.0,
                     label="", fraction=WINDOW_FRACTION):
    """
    Arrival times to PmResult.

    Parameters
    ----------
    times_ns : array-like
        Arrival times relative to the mean V arrival.
    loops : int
    tau_loop_ns : float
    bin_width_ps : float, optional
        Default is 20.
    label : str, optional
    fraction : float, optional
        Default is 0.005. Window threshold relative to the peak.

    Returns
    -------
    PmResult

    """
    h = ArrivalHistogram.from_arrivals(times_ns, bin_width_ps)
    result = analyze_histogram(h, loops, tau_loop_ns, label, fraction)
    logger.debug("{0!r} from {1} arrivals".format(result, int(h.total)))
    return result


def pm_table(results):
    """Results as a table with one row per estimate."""
    return pd.DataFrame([r.to_dict() for r in results], columns=PM_TABLE_COLUMNS)
