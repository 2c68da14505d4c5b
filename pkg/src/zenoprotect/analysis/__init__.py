"""
Reduction of arrival records and Stokes logs to protective-measurement
estimates, fidelity statistics and plot tables.
"""
from .histogram import ArrivalHistogram
from .histogram import window
from .histogram import moments
from .pm import PmResult
from .pm import tau_max
from .pm import expectation
from .pm import sigma_pm
from .pm import sigma_sm
from .pm import relative_performance
from .pm import analyze_histogram
from .pm import analyze_arrivals
from .pm import pm_table
from .fidelity import FidelityStats
from .fidelity import fidelity_stats
from . import plots

__all__ = ["ArrivalHistogram",
           "window",
           "moments",
           "PmResult",
           "tau_max",
           "expectation",
           "sigma_pm",
           "sigma_sm",
           "relative_performance",
           "analyze_histogram",
           "analyze_arrivals",
           "pm_table",
           "FidelityStats",
           "fidelity_stats",
           "plots"]
