"""
The simulated apparatus: prepared state, DGD loops with drifting
birefringence, the squeezer bank that compensates it, and photon-counting
detection.

Each loop maps the protected state through ``R_PS(V) R_drift`` before the
projection, so the effective analyzer seen by the pointer is
``R_drift^dagger R_PS^dagger |psi0>``.
"""
from collections import namedtuple
import logging

import numpy as np

from ..polarization import PolRotation
from ..polarization import PolarizationState
from ..polarization import StokesVector
from ..polarization import stokes_from_amplitudes
from ..zeno import ZenoConfig
from ..zeno import propagate
from ..zeno import tau_g_ns
from ..zeno.pointer import MIN_NORM2
from .detection import ArrivalRecord
from .detection import DetectionConfig
from .detection import apply_timing
from .detection import loss_budget
from .detection import to_physical_ns
from .detection import uniform_arrivals
from .drift import DriftProcess
from .squeezers import S1
from .squeezers import SqueezerBank

logger = logging.getLogger(__name__)

DEFAULT_TAU_LOOP_NS = 0.483
DEFAULT_PULSE_FWHM_NS = 2.5

Detection = namedtuple("Detection", ["counts", "arrivals"])
"""
Outcome of one counter integration.

Parameters
----------
counts : int
    Total detected photons, signal plus dark and background.
arrivals : ArrivalRecord or None
    Time tags of every counted photon when requested.

"""


class PlantState:
    """
    Hidden ground truth of the simulated apparatus.

    Parameters
    ----------
    state : PolarizationState
        The prepared polarization |psi0>.
    loops : int
        Number of Zeno loops ℓ.
    squeezers : SqueezerBank or None, optional
        Default is :meth:`SqueezerBank.default`.
    drift : DriftProcess or None, optional
        Default is a 0.1 rad/sqrt(s) random walk. Its rng is replaced
        by a stream spawned from `seed`.
    detection : DetectionConfig or None, optional
    tau_loop_ns : float, optional
        Default is 0.483. DGD per loop.
    pulse_fwhm_ns : float, optional
        Default is 2.5. Intensity FWHM of the source pulse.
    drift_axis : tuple(float, float, float), optional
        Default is S1, the DGD fiber's birefringence axis.
    seed : int or None, optional
        Seeds the drift, photon-count, arrival-time and polarimeter
        streams.

    """

    def __init__(self, state, loops, squeezers=None, drift=None,
                 detection=None, tau_loop_ns=DEFAULT_TAU_LOOP_NS,
                 pulse_fwhm_ns=DEFAULT_PULSE_FWHM_NS, drift_axis=S1,
                 seed=None):
        if int(loops) != loops or loops < 1:
            raise ValueError("loops must be a positive integer, got {0}".format(loops))
        if not tau_loop_ns > 0:
            raise ValueError("tau_loop_ns must be positive, got {0}".format(tau_loop_ns))
        drift_stream, shot_stream, arrival_stream, polarimeter_stream = (
            np.random.SeedSequence(seed).spawn(4))
        self.state = state
        self.loops = int(loops)
        self.squeezers = squeezers if squeezers is not None else SqueezerBank.default()
        self.drift = drift if drift is not None else DriftProcess()
        self.drift.rng = np.random.default_rng(drift_stream)
        self.detection = detection if detection is not None else DetectionConfig()
        self.tau_loop_ns = float(tau_loop_ns)
        self.pulse_fwhm_ns = float(pulse_fwhm_ns)
        self.drift_axis = tuple(float(a) for a in drift_axis)
        self.tau_g_ns = tau_g_ns(pulse_fwhm_ns)
        self.zeno = ZenoConfig.from_physical(
            self.tau_loop_ns, self.pulse_fwhm_ns, self.loops, state)
        self.shot_rng = np.random.default_rng(shot_stream)
        self.arrival_rng = np.random.default_rng(arrival_stream)
        self.polarimeter_rng = np.random.default_rng(polarimeter_stream)
        self.time = 0.0

    @property
    def drift_phase(self):
        return self.drift.phase

    def drift_rotation(self):
        return PolRotation(self.drift_axis, self.drift.phase)

    def loop_jones(self, V):
        """Jones matrix of one loop's ``R_PS(V) R_drift``."""
        return self.squeezers.jones(V) @ self.drift_rotation().jones()

    def analyzer(self, V):
        """The state projected onto at the end of each loop."""
        c_h, c_v = self.loop_jones(V).conj().T @ self.state.amplitudes
        return PolarizationState.from_amplitudes(c_h, c_v)

    def polarization_overlap(self, V):
        """|<psi0| R_PS(V) R_drift |psi0>|^2."""
        psi = self.state.amplitudes
        amp = np.vdot(psi, self.loop_jones(V) @ psi)
        return float(min(1.0, abs(amp) ** 2))

    def loop_transmission(self, V):
        """
        Power transmission of one loop at voltages `V`.

        Raises
        ------
        VoltageRangeError
            If any voltage lies outside its squeezer's range.

        """
        return self.detection.loop_efficiency * self.polarization_overlap(V)

    def expected_rate(self, V):
        """Mean detected counts per second, signal plus noise."""
        signal = self.detection.signal_rate_hz(self.loop_transmission(V), self.loops)
        return signal + self.detection.noise_rate_hz

    def advance(self, dt):
        """Moves plant time forward, evolving the drift."""
        self.drift.advance(dt)
        self.time += dt

    def detect(self, V, T, record=False):
        """
        Integrates the counter for `T` seconds at voltages `V`.

        Signal and noise photons are drawn separately so that, when
        `record` is set, every counted photon carries a time tag.

        Returns
        -------
        Detection

        """
        if not T > 0:
            raise ValueError("Integration time must be positive, got {0}".format(T))
        signal_mean = self.detection.signal_rate_hz(
            self.loop_transmission(V), self.loops) * T
        noise_mean = self.detection.noise_rate_hz * T
        n_signal = int(self.shot_rng.poisson(signal_mean))
        n_noise = int(self.shot_rng.poisson(noise_mean))
        arrivals = None
        if record:
            arrivals = self._time_tags(V, T, n_signal, n_noise)
        self.advance(T)
        return Detection(n_signal + n_noise, arrivals)

    def _time_tags(self, V, T, n_signal, n_noise):
        det = self.detection
        times = []
        if n_signal:
            pointer = propagate(self.zeno, self.analyzer(V))
            if pointer.norm2() >= MIN_NORM2:
                t_tilde = pointer.sample_arrivals(self.arrival_rng, n_signal)
                t_ns = to_physical_ns(t_tilde, self.loops, self.zeno.tau_tilde,
                                      self.tau_g_ns)
                times.append(apply_timing(t_ns, det, self.arrival_rng))
        if n_noise:
            times.append(uniform_arrivals(n_noise, det, self.arrival_rng))
        times = np.concatenate(times) if times else np.empty(0)
        first = int(round(self.time * det.rep_rate_hz))
        n_pulses = max(1, int(round(T * det.rep_rate_hz)))
        pulses = first + self.arrival_rng.integers(0, n_pulses, size=len(times))
        order = np.argsort(pulses, kind="stable")
        return ArrivalRecord(pulses[order], times[order])

    def count_interval(self, V, T):
        return self.detect(V, T).counts

    def arrival_record(self, V, T):
        return self.detect(V, T, record=True).arrivals

    def analytic_compensation(self):
        """
        Voltages that exactly undo the current drift rotation.

        The first squeezer whose axis is parallel to the drift axis takes
        the opposite retardance; every other squeezer sits at a multiple
        of 2 pi. Voltages are placed near the middle of their ranges.

        Raises
        ------
        ValueError
            If no squeezer shares the drift axis.

        """
        axis = np.asarray(self.drift_axis) / np.linalg.norm(self.drift_axis)
        target = None
        for j, s in enumerate(self.squeezers.squeezers):
            s_axis = np.asarray(s.axis) / np.linalg.norm(s.axis)
            if abs(abs(np.dot(s_axis, axis)) - 1) < 1e-12:
                target = (j, -self.drift.phase * np.sign(np.dot(s_axis, axis)))
                break
        if target is None:
            raise ValueError("No squeezer axis is parallel to the drift axis")
        V = [self.squeezers.centered(0.0, j) for j in range(4)]
        V[target[0]] = self.squeezers.centered(target[1], target[0])
        return np.array(V)

    def protected_stokes(self, V, noise_rad=0.0, rng=None):
        """
        Stokes vector of the protected state after one loop, as seen by a
        polarimeter.

        Parameters
        ----------
        V : array-like
        noise_rad : float, optional
            Default is 0. Standard deviation of isotropic polarimeter noise.
        rng : numpy.random.Generator or None, optional

        Returns
        -------
        StokesVector

        """
        c_h, c_v = self.loop_jones(V) @ self.state.amplitudes
        stokes = stokes_from_amplitudes(c_h, c_v)
        if noise_rad > 0:
            rng = rng if rng is not None else self.polarimeter_rng
            noisy = stokes.as_array() + rng.normal(0.0, noise_rad, size=3)
            stokes = StokesVector.from_array(noisy).normalized()
        return stokes

    def loss_budget(self):
        return loss_budget(self.detection, self.loops)

    def meets_minimum_rate(self):
        return self.loss_budget()["feasible"]


def loop_transmission(ps, V):
    """Power transmission per loop of plant `ps` at voltages `V`."""
    return ps.loop_transmission(V)


def count_interval(ps, V, T):
    """Poisson photon count over `T` seconds; advances plant time."""
    return ps.count_interval(V, T)


def arrival_record(ps, V, T):
    """Time-tagged detections over `T` seconds; advances plant time."""
    return ps.arrival_record(V, T)
