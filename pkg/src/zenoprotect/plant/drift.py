"""
Environmental drift of the birefringent phase of the DGD fiber.
"""
import logging

import numpy as np

logger = logging.getLogger(__name__)

RANDOM_WALK = "random_walk"
ORNSTEIN_UHLENBECK = "ou"
DRIFT_KINDS = (RANDOM_WALK, ORNSTEIN_UHLENBECK)


class DriftProcess:
    """
    A seeded, continuous drift of the DGD retardance.

    Time is advanced in sub-steps no longer than ``1 / step_rate_hz``.
    Each sub-step is an exact Gaussian update, so the statistics do not
    depend on how a given interval is split.

    Parameters
    ----------
    kind : {'random_walk', 'ou'}
        Random walk, or Ornstein-Uhlenbeck relaxation toward 0.
    scale : float
        Diffusion scale in rad/sqrt(s). 0 makes the plant static.
    step_rate_hz : float, optional
        Default is 10. Sub-step rate.
    relaxation_s : float or None, optional
        OU relaxation time. Required for ``kind='ou'``.
    rng : numpy.random.Generator or None, optional
    phase : float, optional
        Default is 0. Initial phase (rad).

    """

    def __init__(self, kind=RANDOM_WALK, scale=0.1, step_rate_hz=10.0,
                 relaxation_s=None, rng=None, phase=0.0):
        if kind not in DRIFT_KINDS:
            raise ValueError(
                "Drift kind must be one of {0}, got {1!r}".format(
                    DRIFT_KINDS, kind))
        if scale < 0:
            raise ValueError("Drift scale must be >= 0, got {0}".format(scale))
        if not step_rate_hz > 0:
            raise ValueError(
                "Drift step rate must be positive, got {0}".format(step_rate_hz))
        if kind == ORNSTEIN_UHLENBECK and not (relaxation_s and relaxation_s > 0):
            raise ValueError(
                "OU drift needs a positive relaxation time, got {0}".format(
                    relaxation_s))
        self.kind = kind
        self.scale = float(scale)
        self.step_rate_hz = float(step_rate_hz)
        self.relaxation_s = relaxation_s
        self.rng = rng if rng is not None else np.random.default_rng()
        self.phase = float(phase)

    @property
    def is_static(self):
        return self.scale == 0

    def _increment(self, dt):
        if self.kind == RANDOM_WALK:
            return self.phase + self.scale * np.sqrt(dt) * self.rng.standard_normal()
        decay = np.exp(-dt / self.relaxation_s)
        spread = self.scale * np.sqrt(self.relaxation_s / 2 * (1 - decay ** 2))
        return self.phase * decay + spread * self.rng.standard_normal()

    def advance(self, dt):
        """
        Evolves the phase by `dt` seconds and returns it.

        ``dt = 0`` and static drifts leave the phase and the rng untouched.
        """
        if dt < 0:
            raise ValueError("Cannot advance drift by negative time {0}".format(dt))
        if dt == 0 or self.is_static:
            return self.phase
        n = max(1, int(np.ceil(dt * self.step_rate_hz - 1e-9)))
        sub = dt / n
        for _ in range(n):
            self.phase = float(self._increment(sub))
        return self.phase

