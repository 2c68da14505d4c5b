"""
Exact propagation of the pointer through repeated DGD passes and
projections, and the weak-coupling prediction it is compared against.
"""
import logging

import numpy as np
import pandas as pd

from ..polarization import PolarizationState
from .pointer import GaussianTerm
from .pointer import PointerState
from .pointer import survival_probability

logger = logging.getLogger(__name__)


def tau_g_ns(pulse_fwhm_ns):
    """
    Pointer time unit tau_G for a pulse of intensity FWHM `pulse_fwhm_ns`.

    With amplitude ``exp(-t**2 / (2 tau_G**2))`` the intensity FWHM is
    ``2 sqrt(ln 2) tau_G``.
    """
    if pulse_fwhm_ns <= 0:
        raise ValueError(
            "Pulse FWHM must be positive, got {0}".format(pulse_fwhm_ns))
    return pulse_fwhm_ns / (2 * np.sqrt(np.log(2)))


class ZenoConfig:
    """
    Parameters of an ℓ-stage protective measurement.

    Parameters
    ----------
    tau_tilde : float
        DGD per stage in units of tau_G. Must be positive.
    stages : int
        Number of Zeno stages ℓ. Must be non-negative.
    state : PolarizationState
        The prepared (protected) polarization.

    """

    def __init__(self, tau_tilde, stages, state):
        if not tau_tilde > 0:
            raise ValueError(
                "tau_tilde must be positive, got {0}".format(tau_tilde))
        if int(stages) != stages or stages < 0:
            raise ValueError(
                "stages must be a non-negative integer, got {0}".format(stages))
        self.tau_tilde = float(tau_tilde)
        self.stages = int(stages)
        self.state = state

    @classmethod
    def from_physical(cls, tau_loop_ns, pulse_fwhm_ns, loops, state):
        """Builds a config from the per-loop DGD and the pulse FWHM in ns."""
        return cls(tau_loop_ns / tau_g_ns(pulse_fwhm_ns), loops, state)

    def is_weak(self):
        return self.tau_tilde < 1

    def __repr__(self):
        return "ZenoConfig(tau_tilde={0!r}, stages={1!r}, state={2!r})".format(
            self.tau_tilde, self.stages, self.state)


def stage_weights(state, analyzer=None):
    """
    Amplitudes carried by the slow (H) and fast (V) branches of one stage.

    Without an analyzer the projection is back onto `state`, which gives
    the real pair ``(cos^2 theta, sin^2 theta)``. With an analyzer the
    pair is ``(<chi|H><H|psi>, <chi|V><V|psi>)``.
    """
    if analyzer is None:
        return np.cos(state.theta) ** 2, np.sin(state.theta) ** 2
    c_h, c_v = state.amplitudes
    a_h, a_v = analyzer.amplitudes
    return complex(np.conj(a_h) * c_h), complex(np.conj(a_v) * c_v)


def zeno_stage_exact(p, cfg, analyzer=None):
    """
    One DGD pass followed by projection.

    Each term ``(w, c)`` splits into ``(w a, c + tau~/2)`` for the slow H
    branch and ``(w b, c - tau~/2)`` for the fast V branch, where
    ``(a, b)`` come from :func:`stage_weights`. Coincident centers merge.

    Parameters
    ----------
    p : PointerState
    cfg : ZenoConfig
    analyzer : PolarizationState or None, optional
        Default is None (project onto the prepared state).

    Returns
    -------
    PointerState
        The unnormalized pointer after the stage.

    """
    slow, fast = stage_weights(cfg.state, analyzer)
    half = cfg.tau_tilde / 2
    terms = []
    for weight, center in p.terms:
        terms.append(GaussianTerm(weight * slow, center + half))
        terms.append(GaussianTerm(weight * fast, center - half))
    return PointerState(terms)


def propagate(cfg, analyzer=None):
    """Applies ``cfg.stages`` exact Zeno stages to the initial pointer."""
    p = PointerState.initial()
    for _ in range(cfg.stages):
        p = zeno_stage_exact(p, cfg, analyzer)
    return p


def weak_prediction(cfg):
    """
    First-order weak-coupling prediction.

    Returns
    -------
    tuple(float, float)
        The pointer shift ``ℓ tau~ <O> / 2`` (normalized time) and the
        survival ``(1 - tau~^2 sin^2(2 theta) / 8)^ℓ``.

    """
    o = cfg.state.expectation_o()
    variance_o = 1 - o ** 2
    shift = cfg.stages * cfg.tau_tilde * o / 2
    survival = (1 - cfg.tau_tilde ** 2 * variance_o / 8) ** cfg.stages
    return shift, survival


def delay_sweep(tau_tilde, loops, thetas, phi=0.0, analyzer=None):
    """
    Exact and weak pointer predictions over a grid of loop counts and
    polarization angles.

    Parameters
    ----------
    tau_tilde : float
    loops : iterable(int)
    thetas : iterable(float)
    phi : float, optional
        Default is 0.
    analyzer : PolarizationState or None, optional

    Returns
    -------
    pandas.DataFrame
        One row per (loops, theta) with columns ``loops``, ``theta``,
        ``expectation_o``, ``mean``, ``std``, ``survival``,
        ``weak_shift``, ``weak_survival``.

    """
    rows = []
    for theta in thetas:
        state = PolarizationState(theta, phi)
        for n in loops:
            cfg = ZenoConfig(tau_tilde, n, state)
            p = propagate(cfg, analyzer)
            survival = survival_probability(p)
            try:
                mean, std = p.moments()
            except ValueError:
                mean, std = np.nan, np.nan
            shift, weak_survival = weak_prediction(cfg)
            rows.append({"loops": n,
                         "theta": state.theta,
                         "expectation_o": state.expectation_o(),
                         "mean": mean,
                         "std": std,
                         "survival": survival,
                         "weak_shift": shift,
                         "weak_survival": weak_survival})
    logger.debug("Swept {0} pointer configurations".format(len(rows)))
    return pd.DataFrame(rows, columns=["loops", "theta", "expectation_o",
                                       "mean", "std", "survival",
                                       "weak_shift", "weak_survival"])


def fit_slope_through_origin(x, y):
    """Least-squares slope of y = k x."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return float(np.dot(x, y) / np.dot(x, x))
