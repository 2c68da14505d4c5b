"""
The simulated apparatus the stabilizer must track: squeezers, drifting
DGD birefringence, loss and photon-counting detection.
"""
from .squeezers import Squeezer
from .squeezers import SqueezerBank
from .squeezers import VoltageRangeError
from .drift import DriftProcess
from .detection import ArrivalRecord
from .detection import DetectionConfig
from .detection import loss_budget
from .plant import Detection
from .plant import PlantState
from .plant import loop_transmission
from .plant import count_interval
from .plant import arrival_record

__all__ = ["Squeezer",
           "SqueezerBank",
           "VoltageRangeError",
           "DriftProcess",
           "ArrivalRecord",
           "DetectionConfig",
           "loss_budget",
           "Detection",
           "PlantState",
           "loop_transmission",
           "count_interval",
           "arrival_record"]
