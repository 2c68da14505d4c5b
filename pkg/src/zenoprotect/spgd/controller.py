"""
Stochastic parallel gradient descent over the four squeezer voltages.

One step perturbs every channel by ``±C`` at random, measures the
objective at ``V + dV`` and then ``V - dV``, and moves along ``dV`` by the
clamped gain ``G = clip(gamma (f+ - f-), -G_max, G_max)``. Voltages that
leave their range are unwound by whole 2 pi periods.
"""
from collections import namedtuple
import copy
import logging

import numpy as np

logger = logging.getLogger(__name__)


SpgdRecord = namedtuple("SpgdRecord", ["V", "f_plus", "f_minus", "G", "delta_V"])
"""
History entry of one SPGD step.

Parameters
----------
V : numpy.ndarray
    Voltages before the step.
f_plus, f_minus : float
    Objective values at the two probes.
G : float
    Clamped gain.
delta_V : numpy.ndarray
    The random perturbation.

"""


def wrap_voltages(V, v_min, v_max, period):
    """
    Unwinds voltages into ``[v_min, v_max]`` by whole periods.

    Channels above `v_max` lose the smallest number of periods that
    brings them to or below it, and channels below `v_min` gain them.
    """
    V = np.array(V, dtype=float)
    v_min = np.broadcast_to(np.asarray(v_min, dtype=float), V.shape)
    v_max = np.broadcast_to(np.asarray(v_max, dtype=float), V.shape)
    period = np.broadcast_to(np.asarray(period, dtype=float), V.shape)
    high = V > v_max
    V[high] -= period[high] * np.ceil((V[high] - v_max[high]) / period[high])
    low = V < v_min
    V[low] += period[low] * np.ceil((v_min[low] - V[low]) / period[low])
    return V


class SpgdConfig:
    """
    SPGD constants.

    Parameters
    ----------
    C : float
        Perturbation magnitude (V).
    gamma : float
        Gain per unit objective difference (counts).
    g_max : float
        Clamp on the gain.
    integration_s : float, optional
        Default is 0.2. Counter integration time of each probe.
    v_min, v_max : float or array-like, optional
        Default is 0 and 150. Voltage limits per channel.
    wrap_period : float or array-like, optional
        Default is 20. Voltage giving a 2 pi retardance per channel.

    """

    def __init__(self, C, gamma, g_max, integration_s=0.2, v_min=0.0,
                 v_max=150.0, wrap_period=20.0):
        for name, value in (("C", C), ("gamma", gamma), ("g_max", g_max),
                            ("integration_s", integration_s)):
            if not value > 0:
                raise ValueError("{0} must be positive, got {1}".format(name, value))
        self.C = float(C)
        self.gamma = float(gamma)
        self.g_max = float(g_max)
        self.integration_s = float(integration_s)
        self.v_min = np.broadcast_to(np.asarray(v_min, dtype=float), (4,)).copy()
        self.v_max = np.broadcast_to(np.asarray(v_max, dtype=float), (4,)).copy()
        self.wrap_period = np.broadcast_to(
            np.asarray(wrap_period, dtype=float), (4,)).copy()
        if np.any(self.wrap_period <= 0):
            raise ValueError("wrap_period must be positive")
        if np.any(self.wrap_period > self.v_max - self.v_min):
            raise ValueError(
                "wrap_period {0} exceeds the voltage range".format(
                    self.wrap_period.tolist()))

    @classmethod
    def for_bank(cls, bank, C, gamma, g_max, integration_s=0.2):
        """Limits and wrap periods taken from a :class:`SqueezerBank`."""
        return cls(C, gamma, g_max, integration_s, v_min=bank.v_min,
                   v_max=bank.v_max, wrap_period=bank.wrap_voltages)

    def wrap(self, V):
        return wrap_voltages(V, self.v_min, self.v_max, self.wrap_period)


class SpgdState:
    """
    Controller state.

    Parameters
    ----------
    V : array-like of 4 floats
        Current voltages; must lie within the configured limits.
    rng : numpy.random.Generator or int or None, optional
        The controller's own random stream (or a seed for it).
    iteration : int, optional
        Default is 0.
    history : list(SpgdRecord), optional
        Earlier steps, oldest first.

    """

    def __init__(self, V, rng=None, iteration=0, history=None):
        self.V = np.array(V, dtype=float)
        if self.V.shape != (4,):
            raise ValueError(
                "Expected 4 voltages, got shape {0}".format(self.V.shape))
        if not isinstance(rng, np.random.Generator):
            rng = np.random.default_rng(rng)
        self.rng = rng
        self.iteration = int(iteration)
        # (record, parent) chain shared with earlier states; never mutated
        self._chain = None
        for record in history or ():
            self._chain = (record, self._chain)

    @property
    def history(self):
        """SpgdRecords of every step so far, oldest first."""
        out = []
        node = self._chain
        while node is not None:
            out.append(node[0])
            node = node[1]
        return out[::-1]

    @property
    def last_record(self):
        return self._chain[0] if self._chain is not None else None

    def _advanced(self, V, rng, record):
        out = SpgdState(V, rng, self.iteration + 1)
        out._chain = (record, self._chain)
        return out

    def __repr__(self):
        return "SpgdState(V={0}, iteration={1})".format(
            np.round(self.V, 4).tolist(), self.iteration)


def spgd_step(s, cfg, f):
    """
    Performs one SPGD iteration.

    Parameters
    ----------
    s : SpgdState
    cfg : SpgdConfig
    f : callable
        Objective oracle, called exactly twice: at ``V + dV`` and then at
        ``V - dV`` (both unwound into range).

    Returns
    -------
    SpgdState
        A new state. `s` is never modified, so an exception raised by the
        oracle leaves it (and its rng) untouched.

    Raises
    ------
    ValueError
        If the current voltages are outside the configured limits.

    """
    if np.any(s.V < cfg.v_min) or np.any(s.V > cfg.v_max):
        raise ValueError(
            "SPGD voltages {0} outside the configured limits".format(
                s.V.tolist()))
    rng = copy.deepcopy(s.rng)
    signs = 2 * rng.integers(0, 2, size=4) - 1
    delta_V = cfg.C * signs
    f_plus = f(cfg.wrap(s.V + delta_V))
    f_minus = f(cfg.wrap(s.V - delta_V))
    G = float(np.clip(cfg.gamma * (f_plus - f_minus), -cfg.g_max, cfg.g_max))
    raw = s.V + G * delta_V
    V = cfg.wrap(raw)
    if np.any(V != raw):
        logger.debug("Unwound squeezer voltages {0} -> {1}".format(
            np.round(raw, 3).tolist(), np.round(V, 3).tolist()))
    record = SpgdRecord(s.V.copy(), f_plus, f_minus, G, delta_V)
    return s._advanced(V, rng, record)
