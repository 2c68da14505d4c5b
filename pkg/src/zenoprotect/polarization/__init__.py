"""
Pure-state polarization algebra: states, Stokes vectors, sphere rotations
and the fidelity metric.
"""
from .states import PolarizationState
from .states import StokesVector
from .states import PolRotation
from .states import to_stokes
from .states import stokes_from_amplitudes
from .states import fidelity
from .states import angle_between
from .states import apply_rotation
from .states import projector_overlap

__all__ = ["PolarizationState",
           "StokesVector",
           "PolRotation",
           "to_stokes",
           "stokes_from_amplitudes",
           "fidelity",
           "angle_between",
           "apply_rotation",
           "projector_overlap"]
