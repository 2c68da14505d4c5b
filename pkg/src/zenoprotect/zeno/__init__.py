"""
Exact and weak-coupling propagation of the temporal pointer through
repeated Zeno stages.
"""
from .pointer import GaussianTerm
from .pointer import PointerState
from .pointer import survival_probability
from .pointer import pointer_moments
from .propagate import ZenoConfig
from .propagate import tau_g_ns
from .propagate import stage_weights
from .propagate import zeno_stage_exact
from .propagate import propagate
from .propagate import weak_prediction
from .propagate import delay_sweep
from .propagate import fit_slope_through_origin
from .grid import propagate_on_grid
from .grid import grid_moments

__all__ = ["GaussianTerm",
           "PointerState",
           "survival_probability",
           "pointer_moments",
           "ZenoConfig",
           "tau_g_ns",
           "stage_weights",
           "zeno_stage_exact",
           "propagate",
           "weak_prediction",
           "delay_sweep",
           "fit_slope_through_origin",
           "propagate_on_grid",
           "grid_moments"]
