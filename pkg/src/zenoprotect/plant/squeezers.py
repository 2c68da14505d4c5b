"""
Voltage-driven fiber squeezers of the electronic polarization controller.
"""
from collections import namedtuple
import logging

import numpy as np

from ..polarization import PolRotation

logger = logging.getLogger(__name__)

S1 = (1.0, 0.0, 0.0)
S2 = (0.0, 1.0, 0.0)
S3 = (0.0, 0.0, 1.0)

DEFAULT_GAIN = np.pi / 10
DEFAULT_LIMITS = (0.0, 150.0)


class VoltageRangeError(ValueError):
    """A squeezer voltage lies outside its allowed range."""


Squeezer = namedtuple("Squeezer", ["axis", "gain", "offset", "v_min", "v_max"])
"""
One fiber squeezer.

Parameters
----------
axis : tuple(float, float, float)
    Rotation axis on the Poincaré sphere.
gain : float
    Retardance per volt (rad/V). Must be positive.
offset : float
    Retardance at 0 V (rad).
v_min, v_max : float
    Allowed voltage range.

"""


class SqueezerBank:
    """
    Four squeezers applied in order, ``R_PS(V) = R4 R3 R2 R1``.

    Parameters
    ----------
    squeezers : list(Squeezer)
        Exactly four squeezers. Consecutive axes must not be parallel.

    """

    def __init__(self, squeezers):
        squeezers = [Squeezer(tuple(float(a) for a in s[0]), *map(float, s[1:]))
                     for s in squeezers]
        if len(squeezers) != 4:
            raise ValueError(
                "A squeezer bank needs 4 squeezers, got {0}".format(
                    len(squeezers)))
        for i, s in enumerate(squeezers):
            if not s.gain > 0:
                raise ValueError(
                    "Squeezer {0} gain must be positive, got {1}".format(
                        i + 1, s.gain))
            if not s.v_max > s.v_min:
                raise ValueError(
                    "Squeezer {0} has an empty voltage range [{1}, {2}]".format(
                        i + 1, s.v_min, s.v_max))
        for i in range(3):
            a = np.asarray(squeezers[i].axis)
            b = np.asarray(squeezers[i + 1].axis)
            if np.linalg.norm(np.cross(a, b)) < 1e-9:
                raise ValueError(
                    "Squeezers {0} and {1} have parallel axes".format(i + 1, i + 2))
        self.squeezers = tuple(squeezers)

    @classmethod
    def default(cls, gain=DEFAULT_GAIN, limits=DEFAULT_LIMITS):
        """Alternating S1, S2, S1, S2 axes with equal gains and no offsets."""
        return cls([Squeezer(axis, gain, 0.0, limits[0], limits[1])
                    for axis in (S1, S2, S1, S2)])

    @property
    def v_min(self):
        return np.array([s.v_min for s in self.squeezers])

    @property
    def v_max(self):
        return np.array([s.v_max for s in self.squeezers])

    @property
    def wrap_voltages(self):
        """Voltage change that rotates each squeezer by exactly 2 pi."""
        return np.array([2 * np.pi / s.gain for s in self.squeezers])

    def check(self, V):
        """
        Validates a voltage vector.

        Raises
        ------
        VoltageRangeError
            If any channel lies outside its limits.

        """
        V = np.asarray(V, dtype=float)
        if V.shape != (4,):
            raise ValueError(
                "Expected 4 squeezer voltages, got shape {0}".format(V.shape))
        outside = (V < self.v_min) | (V > self.v_max)
        if outside.any():
            j = int(np.argmax(outside))
            raise VoltageRangeError(
                "Squeezer {0} voltage {1:.6g} V outside [{2}, {3}]".format(
                    j + 1, V[j], self.squeezers[j].v_min,
                    self.squeezers[j].v_max))
        return V

    def retardances(self, V):
        V = self.check(V)
        return np.array([s.gain * v + s.offset
                         for s, v in zip(self.squeezers, V)])

    def rotations(self, V):
        return [PolRotation(s.axis, d)
                for s, d in zip(self.squeezers, self.retardances(V))]

    def jones(self, V):
        """SU(2) matrix of the whole bank, squeezer 1 acting first."""
        matrix = np.eye(2, dtype=complex)
        for rotation in self.rotations(V):
            matrix = rotation.jones() @ matrix
        return matrix

    def rotation(self, V):
        return PolRotation.from_jones(self.jones(V))

    def neutral(self):
        """Lowest voltages at which every squeezer is a multiple of 2 pi."""
        out = []
        for s, period in zip(self.squeezers, self.wrap_voltages):
            v = -s.offset / s.gain
            v += period * np.ceil((s.v_min - v) / period)
            if v > s.v_max:
                raise VoltageRangeError(
                    "No neutral voltage fits in [{0}, {1}]".format(
                        s.v_min, s.v_max))
            out.append(v)
        return np.array(out)

    def centered(self, retardance, j):
        """
        Voltage on squeezer `j` giving `retardance` modulo 2 pi, chosen
        closest to the middle of its range.
        """
        s = self.squeezers[j]
        period = 2 * np.pi / s.gain
        base = np.mod(retardance - s.offset, 2 * np.pi) / s.gain
        middle = (s.v_min + s.v_max) / 2
        v = base + period * np.round((middle - base) / period)
        while v > s.v_max:
            v -= period
        while v < s.v_min:
            v += period
        return float(v)
