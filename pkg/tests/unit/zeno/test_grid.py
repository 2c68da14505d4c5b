"""
The closed-form pointer engine against brute-force propagation on a grid.
"""
import numpy as np
import pytest

from zenoprotect.polarization import PolarizationState
from zenoprotect.zeno import ZenoConfig
from zenoprotect.zeno import grid_moments
from zenoprotect.zeno import propagate
from zenoprotect.zeno import propagate_on_grid
from zenoprotect.zeno.grid import make_grid


def _random_cases(n, seed=2024):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        yield (rng.uniform(0, np.pi / 2), rng.uniform(-np.pi, np.pi),
               rng.uniform(0.05, 0.5), int(rng.integers(1, 14)))


class TestGridOracle:

    def test_grid_contains_zero_and_divides_shift(self):
        cfg = ZenoConfig(0.4, 3, PolarizationState.diagonal())
        t, step = make_grid(cfg)
        assert step == pytest.approx(0.4 / 50)
        assert np.any(t == 0.0)
        assert t[-1] >= 3 * 0.4 / 2 + 8 - 1e-12

    @pytest.mark.slow
    def test_closed_form_matches_grid(self):
        for theta, phi, tau_tilde, loops in _random_cases(200):
            cfg = ZenoConfig(tau_tilde, loops, PolarizationState(theta, phi))
            exact = propagate(cfg)
            norm2, mean, std = grid_moments(*propagate_on_grid(cfg))
            e_mean, e_std = exact.moments()
            assert abs(norm2 - exact.norm2()) < 1e-8
            assert abs(mean - e_mean) < 1e-8
            assert abs(std - e_std) < 1e-8

    def test_closed_form_matches_grid_with_analyzer(self):
        for theta, phi, tau_tilde, loops in _random_cases(20, seed=7):
            state = PolarizationState(theta, phi)
            analyzer = PolarizationState(theta + 0.05, phi + 0.1)
            cfg = ZenoConfig(tau_tilde, loops, state)
            exact = propagate(cfg, analyzer)
            norm2, mean, std = grid_moments(*propagate_on_grid(cfg, analyzer))
            e_mean, e_std = exact.moments()
            assert abs(norm2 - exact.norm2()) < 1e-8
            assert abs(mean - e_mean) < 1e-8
            assert abs(std - e_std) < 1e-8

    def test_amplitude_matches_on_grid(self):
        cfg = ZenoConfig(0.3, 5, PolarizationState(0.7, 0.2))
        t, amp = propagate_on_grid(cfg)
        np.testing.assert_allclose(amp, propagate(cfg).amplitude(t), atol=1e-12)

    def test_zero_norm_rejected(self):
        with pytest.raises(ValueError):
            grid_moments(np.array([0.0, 1.0]), np.zeros(2))
