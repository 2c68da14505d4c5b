"""
Brute-force Zeno propagation on a discretized time grid.

Used as an independent check of the closed-form Gaussian-mixture engine:
the amplitude is split into its H and V branches, each branch is shifted
by whole grid points and the projected branches are summed again.
"""
import numpy as np

from .propagate import stage_weights

POINTS_PER_HALF_SHIFT = 25
WINDOW_MARGIN = 8.0


def _shift(values, k):
    """Shifts `values` by `k` points toward larger indices with zero fill."""
    out = np.zeros_like(values)
    if k == 0:
        out[:] = values
    elif k > 0:
        out[k:] = values[:-k]
    else:
        out[:k] = values[-k:]
    return out


def make_grid(cfg, points_per_half_shift=POINTS_PER_HALF_SHIFT,
              margin=WINDOW_MARGIN):
    """
    A symmetric time grid containing 0 whose step divides tau~/2 exactly.

    The grid step is ``tau~ / (2 points_per_half_shift)`` and the window
    spans ``±(ℓ tau~ / 2 + margin)``.
    """
    step = cfg.tau_tilde / (2 * points_per_half_shift)
    half_width = cfg.stages * cfg.tau_tilde / 2 + margin
    n = int(np.ceil(half_width / step))
    return step * np.arange(-n, n + 1), step


def propagate_on_grid(cfg, analyzer=None,
                      points_per_half_shift=POINTS_PER_HALF_SHIFT):
    """
    Propagates the initial Gaussian through ``cfg.stages`` stages on a grid.

    Returns
    -------
    tuple(numpy.ndarray, numpy.ndarray)
        The grid and the complex amplitude sampled on it.

    """
    t, _ = make_grid(cfg, points_per_half_shift)
    slow, fast = stage_weights(cfg.state, analyzer)
    amp = (np.pi ** -0.25 * np.exp(-t ** 2 / 2)).astype(complex)
    for _ in range(cfg.stages):
        amp = (slow * _shift(amp, points_per_half_shift)
               + fast * _shift(amp, -points_per_half_shift))
    return t, amp


def grid_moments(t, amp):
    """
    Squared norm, mean and standard deviation of a sampled amplitude,
    by the rectangle rule.

    Returns
    -------
    tuple(float, float, float)

    """
    step = t[1] - t[0]
    density = np.abs(amp) ** 2
    norm2 = float(density.sum() * step)
    if norm2 <= 0:
        raise ValueError("Grid amplitude has zero norm")
    mean = float((density * t).sum() * step / norm2)
    second = float((density * t ** 2).sum() * step / norm2)
    return norm2, mean, float(np.sqrt(max(0.0, second - mean ** 2)))
