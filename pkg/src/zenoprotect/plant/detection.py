"""
Photon budget, attenuation and time-tagged detection.
"""
import logging

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

MAX_DETECTED_PER_PULSE = 0.1
MIN_COUNT_RATE_HZ = 500.0


class DetectionConfig:
    """
    Source, loss and detector parameters.

    Parameters
    ----------
    mu0 : float, optional
        Default is 1e9. Photons per pulse at the source.
    loss_db_per_loop : float, optional
        Default is 7.
    rep_rate_hz : float, optional
        Default is 50e3. Pulse repetition rate.
    target_per_pulse : float, optional
        Default is 0.08. Detected photons per pulse the attenuator aims
        for at unit polarization overlap. Must not exceed 0.1.
    jitter_ps : float, optional
        Default is 100. Gaussian timing jitter (standard deviation).
    tdc_ps : float, optional
        Default is 20. Time-tagger resolution.
    dark_rate_hz : float, optional
        Default is 25.
    background_rate_hz : float, optional
        Default is 0. Uniform background spread over the TDC window.
    integration_s : float, optional
        Default is 0.2. Counter integration time per probe.
    window_ns : tuple(float, float), optional
        Default is (-10, 20). TDC acceptance window relative to the mean
        V-photon arrival.

    """

    def __init__(self, mu0=1e9, loss_db_per_loop=7.0, rep_rate_hz=50e3,
                 target_per_pulse=0.08, jitter_ps=100.0, tdc_ps=20.0,
                 dark_rate_hz=25.0, background_rate_hz=0.0, integration_s=0.2,
                 window_ns=(-10.0, 20.0)):
        for name, value in (("mu0", mu0),
                            ("loss_db_per_loop", loss_db_per_loop),
                            ("rep_rate_hz", rep_rate_hz),
                            ("jitter_ps", jitter_ps),
                            ("dark_rate_hz", dark_rate_hz),
                            ("background_rate_hz", background_rate_hz)):
            if value < 0:
                raise ValueError("{0} must be >= 0, got {1}".format(name, value))
        if not 0 < target_per_pulse <= MAX_DETECTED_PER_PULSE:
            raise ValueError(
                "target_per_pulse must be in (0, {0}], got {1}".format(
                    MAX_DETECTED_PER_PULSE, target_per_pulse))
        if not tdc_ps > 0 or not integration_s > 0:
            raise ValueError("tdc_ps and integration_s must be positive")
        if not window_ns[1] > window_ns[0]:
            raise ValueError("Empty TDC window {0}".format(window_ns))
        self.mu0 = float(mu0)
        self.loss_db_per_loop = float(loss_db_per_loop)
        self.rep_rate_hz = float(rep_rate_hz)
        self.target_per_pulse = float(target_per_pulse)
        self.jitter_ps = float(jitter_ps)
        self.tdc_ps = float(tdc_ps)
        self.dark_rate_hz = float(dark_rate_hz)
        self.background_rate_hz = float(background_rate_hz)
        self.integration_s = float(integration_s)
        self.window_ns = (float(window_ns[0]), float(window_ns[1]))

    @property
    def loop_efficiency(self):
        """Power transmission of one loop at perfect polarization overlap."""
        return 10 ** (-self.loss_db_per_loop / 10)

    @property
    def noise_rate_hz(self):
        return self.dark_rate_hz + self.background_rate_hz

    def attenuation(self, loops):
        """Attenuator transmission that brings the optimum to the target."""
        reach = self.mu0 * self.loop_efficiency ** loops
        if reach <= 0:
            return 1.0
        return min(1.0, self.target_per_pulse / reach)

    def detected_per_pulse(self, transmission, loops):
        """Mean detected signal photons per pulse, capped at 0.1."""
        mean = self.mu0 * transmission ** loops * self.attenuation(loops)
        return min(MAX_DETECTED_PER_PULSE, mean)

    def signal_rate_hz(self, transmission, loops):
        return self.rep_rate_hz * self.detected_per_pulse(transmission, loops)


def loss_budget(detection, loops):
    """
    Loss and count-rate summary for `loops` loops.

    Returns
    -------
    dict
        ``loop_transmission``, ``total_loss_db``, ``photons_at_detector``
        (before attenuation), ``attenuation``, ``optimum_rate_hz`` and
        ``feasible`` (optimum rate >= 500 counts/s).

    """
    eta = detection.loop_efficiency
    reach = detection.mu0 * eta ** loops
    optimum = (detection.signal_rate_hz(eta, loops) + detection.noise_rate_hz)
    budget = {"loop_transmission": eta,
              "total_loss_db": detection.loss_db_per_loop * loops,
              "photons_at_detector": reach,
              "attenuation": detection.attenuation(loops),
              "optimum_rate_hz": optimum,
              "feasible": bool(optimum >= MIN_COUNT_RATE_HZ)}
    if reach < detection.target_per_pulse:
        logger.warning(
            "Attenuator cannot reach {0} detected photons/pulse with {1} loops "
            "(only {2:.3g} arrive)".format(
                detection.target_per_pulse, loops, reach))
    if not budget["feasible"]:
        logger.warning(
            "Optimum count rate {0:.1f}/s is below the {1:.0f}/s needed for "
            "stabilization".format(optimum, MIN_COUNT_RATE_HZ))
    return budget


class ArrivalRecord:
    """
    Time-tagged photon detections.

    Parameters
    ----------
    pulse_index : array-like of int
    time_ns : array-like of float
        Arrival time relative to the mean V-photon arrival.

    """

    def __init__(self, pulse_index=(), time_ns=()):
        self.pulse_index = np.asarray(pulse_index, dtype=np.int64)
        self.time_ns = np.asarray(time_ns, dtype=float)
        if self.pulse_index.shape != self.time_ns.shape:
            raise ValueError(
                "pulse_index and time_ns lengths differ ({0} vs {1})".format(
                    len(self.pulse_index), len(self.time_ns)))

    def __len__(self):
        return len(self.time_ns)

    @classmethod
    def concatenate(cls, records):
        records = list(records)
        if not records:
            return cls()
        return cls(np.concatenate([r.pulse_index for r in records]),
                   np.concatenate([r.time_ns for r in records]))

    def to_frame(self):
        return pd.DataFrame({"pulse_index": self.pulse_index,
                             "arrival_time_ns": self.time_ns})

    def to_csv(self, path):
        self.to_frame().to_csv(path, index=False, float_format="%.4f")

    @classmethod
    def from_csv(cls, path):
        frame = pd.read_csv(path)
        return cls(frame["pulse_index"].to_numpy(),
                   frame["arrival_time_ns"].to_numpy())


def to_physical_ns(t_tilde, loops, tau_tilde, tau_g_ns):
    """
    Maps normalized pointer times to ns with the mean V arrival at 0.

    The fast V branch sits at ``-ℓ tau~ / 2`` in normalized time.
    """
    return (np.asarray(t_tilde) + loops * tau_tilde / 2) * tau_g_ns


def quantize(times_ns, detection):
    step = detection.tdc_ps * 1e-3
    return np.round(np.asarray(times_ns, dtype=float) / step) * step


def apply_timing(times_ns, detection, rng):
    """Adds detector jitter and quantizes to the TDC grid."""
    times_ns = np.asarray(times_ns, dtype=float)
    if detection.jitter_ps > 0:
        times_ns = times_ns + rng.normal(0.0, detection.jitter_ps * 1e-3,
                                         size=times_ns.shape)
    return quantize(times_ns, detection)


def uniform_arrivals(n, detection, rng):
    """Dark and background counts, uniform over the TDC window."""
    low, high = detection.window_ns
    return quantize(rng.uniform(low, high, size=n), detection)
