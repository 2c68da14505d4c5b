"""
Protective-measurement arithmetic against the published table of arrival
statistics, and the estimate pipeline on sampled arrivals.
"""
import numpy as np
import pytest

from zenoprotect.analysis import PmResult
from zenoprotect.analysis import analyze_arrivals
from zenoprotect.analysis import expectation
from zenoprotect.analysis import pm_table
from zenoprotect.analysis import relative_performance
from zenoprotect.analysis import sigma_pm
from zenoprotect.analysis import sigma_sm
from zenoprotect.analysis import tau_max

TAU_LOOP_NS = 0.483

# loops, t_M (ns), std (ns), <O>, sigma_PM, sigma_SM, R
PUBLISHED_ROWS = [
    (8, 0.00, 0.79, -1.00, 0.41, 0.0, 0.0),
    (8, 1.07, 0.87, -0.45, 0.45, 0.89, 2.0),
    (8, 2.07, 0.89, 0.07, 0.46, 1.00, 2.2),
    (8, 3.04, 0.85, 0.57, 0.44, 0.82, 1.9),
    (8, 3.87, 0.81, 1.00, 0.42, 0.0, 0.0),
    (8, 0.00, 0.82, -1.00, 0.42, 0.0, 0.0),
    (8, 0.99, 0.89, -0.49, 0.46, 0.87, 1.9),
    (8, 1.95, 0.92, 0.01, 0.47, 1.00, 2.1),
    (8, 2.90, 0.88, 0.50, 0.46, 0.87, 1.9),
    (8, 3.87, 0.81, 1.00, 0.42, 0.0, 0.0),
    (13, 0.00, 0.84, -1.00, 0.27, 0.0, 0.0),
    (13, 1.67, 0.97, -0.47, 0.31, 0.88, 2.8),
    (13, 3.13, 1.00, 0.00, 0.32, 1.00, 3.1),
    (13, 4.65, 0.95, 0.48, 0.30, 0.88, 2.9),
    (13, 6.25, 0.83, 0.99, 0.26, 0.14, 0.5),
]


class TestPublishedArithmetic:

    @pytest.mark.parametrize("loops,t_m,std,o,s_pm,s_sm,r", PUBLISHED_ROWS)
    def test_row(self, loops, t_m, std, o, s_pm, s_sm, r):
        result = PmResult(t_m, std, loops, TAU_LOOP_NS, counts=1)
        assert result.expectation == pytest.approx(o, abs=0.015)
        assert result.sigma_pm == pytest.approx(s_pm, abs=0.015)
        assert result.sigma_sm == pytest.approx(s_sm, abs=0.015)
        # R is printed from rounded columns
        assert result.r == pytest.approx(r, abs=0.07)

    def test_examples(self):
        assert expectation(3.13, 13, 0.483) == pytest.approx(-0.003, abs=1e-3)
        assert expectation(3.87, 8, 0.483) == pytest.approx(1.003, abs=1e-3)
        assert sigma_pm(0.84, 13, 0.483) == pytest.approx(0.268, abs=1e-3)
        assert sigma_pm(0.82, 8, 0.483) == pytest.approx(0.424, abs=1e-3)
        assert relative_performance(1.00, 0.32) == pytest.approx(3.1, abs=0.05)
        assert relative_performance(0.88, 0.31) == pytest.approx(2.8, abs=0.05)


class TestPmFunctions:

    def test_tau_max(self):
        assert tau_max(13, 0.483) == pytest.approx(6.279)
        with pytest.raises(ValueError):
            tau_max(0, 0.483)
        with pytest.raises(ValueError):
            tau_max(13, 0.0)

    @pytest.mark.parametrize("o,expected", [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (-0.47, 0.88)])
    def test_sigma_sm(self, o, expected):
        assert sigma_sm(o) == pytest.approx(expected, abs=0.005)

    def test_sigma_sm_clips_overshoot(self, caplog):
        assert sigma_sm(1.02) == 0.0
        assert "Clipping" in caplog.text

    def test_relative_performance_eigenstate(self):
        assert relative_performance(0.0, 0.0) == 0.0
        assert relative_performance(0.0, 0.4) == 0.0
        with pytest.raises(ValueError):
            relative_performance(0.5, 0.0)

    def test_raw_expectation_kept(self):
        result = PmResult(3.9, 0.8, 8, TAU_LOOP_NS, counts=10)
        assert result.expectation > 1.0
        assert result.sigma_sm == 0.0

    def test_scale_invariance(self):
        base = PmResult(1.67, 0.97, 13, TAU_LOOP_NS, counts=1)
        scaled = PmResult(1.67 * 2.5, 0.97 * 2.5, 13, TAU_LOOP_NS * 2.5, counts=1)
        assert scaled.expectation == pytest.approx(base.expectation, abs=1e-12)
        assert scaled.sigma_pm == pytest.approx(base.sigma_pm, abs=1e-12)
        assert scaled.r == pytest.approx(base.r, abs=1e-12)


class TestAnalyzeArrivals:

    def test_sampled_gaussian(self):
        rng = np.random.default_rng(31)
        times = np.round(rng.normal(3.13, 1.00, size=50000) / 0.02) * 0.02
        result = analyze_arrivals(times, 13, TAU_LOOP_NS, label="h")
        assert result.t_m_ns == pytest.approx(3.13, abs=0.02)
        assert result.sigma_pm == pytest.approx(2 * 1.00 / 6.279, abs=0.01)
        assert result.r == pytest.approx(3.1, abs=0.15)
        assert 49000 < result.counts <= 50000
        assert result.label == "h"

    def test_table(self):
        results = [PmResult(0.0, 0.84, 13, TAU_LOOP_NS, 100, "f"),
                   PmResult(3.13, 1.00, 13, TAU_LOOP_NS, 120, "h")]
        table = pm_table(results)
        assert list(table.columns) == ["label", "loops", "t_m_ns", "std_ns", "expectation",
                                       "sigma_pm", "sigma_sm", "r", "counts", "tau_max_ns"]
        assert table["label"].tolist() == ["f", "h"]
        assert table["counts"].tolist() == [100, 120]
        assert len(pm_table([])) == 0

    def test_empty_record(self):
        with pytest.raises(ValueError):
            analyze_arrivals([], 13, TAU_LOOP_NS)
