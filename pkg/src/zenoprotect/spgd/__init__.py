"""
The SPGD polarization stabilizer and its closed loop with the plant.
"""
from .controller import SpgdConfig
from .controller import SpgdRecord
from .controller import SpgdState
from .controller import spgd_step
from .controller import wrap_voltages
from .loop import PROBE_FIXED
from .loop import PROBE_MINUS
from .loop import PROBE_PLUS
from .loop import StabilizationTrace
from .loop import run_stabilized

__all__ = ["SpgdConfig",
           "SpgdRecord",
           "SpgdState",
           "spgd_step",
           "wrap_voltages",
           "PROBE_FIXED",
           "PROBE_MINUS",
           "PROBE_PLUS",
           "StabilizationTrace",
           "run_stabilized"]
