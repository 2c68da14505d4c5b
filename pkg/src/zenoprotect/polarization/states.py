"""
Pure-state polarization algebra on the Poincaré sphere.

States are kept as the canonical pair (theta, phi) of
``cos(theta)|H> + exp(i phi) sin(theta)|V>``. The Stokes convention is

    s1 = |c_H|^2 - |c_V|^2
    s2 = 2 Re(c_H* c_V)
    s3 = 2 Im(c_H* c_V)

so that H maps to (1, 0, 0), the diagonal state to (0, 1, 0) and the
circular state with phi = pi/2 to (0, 0, 1). Rotations act on Jones
vectors as SU(2) matrices and on Stokes vectors as the corresponding
Rodrigues rotation.
"""
from typing import NamedTuple

import numpy as np

NORM_TOLERANCE = 1e-12
UNIT_TOLERANCE = 1e-6

# Pauli matrices ordered to match (s1, s2, s3).
_PAULI = (
    np.array([[1, 0], [0, -1]], dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
)


def _wrap_phase(phi):
    """Wrap an angle into (-pi, pi]."""
    wrapped = float(np.angle(np.exp(1j * phi)))
    if wrapped <= -np.pi:
        wrapped += 2 * np.pi
    return wrapped


class StokesVector(NamedTuple):
    """Dimensionless Stokes vector (s1, s2, s3) of a polarization."""
    s1: float
    s2: float
    s3: float

    def as_array(self):
        return np.array([self.s1, self.s2, self.s3], dtype=float)

    def norm(self):
        return float(np.linalg.norm(self.as_array()))

    def dot(self, other):
        return float(np.dot(self.as_array(), np.asarray(other, dtype=float)))

    def normalized(self):
        """
        Returns the unit vector along this one.

        Raises
        ------
        ValueError
            If the vector has zero length.

        """
        arr = self.as_array()
        length = np.linalg.norm(arr)
        if length == 0:
            raise ValueError("Cannot normalize a zero-length Stokes vector")
        return StokesVector(*(arr / length))

    @classmethod
    def from_array(cls, arr):
        arr = np.asarray(arr, dtype=float)
        if arr.shape != (3,):
            raise ValueError(
                "Stokes vector must have 3 components, got shape {0}".format(
                    arr.shape))
        return cls(float(arr[0]), float(arr[1]), float(arr[2]))


class PolarizationState:
    """
    A pure polarization state ``cos(theta)|H> + exp(i phi) sin(theta)|V>``.

    Parameters
    ----------
    theta : float
        Polarization angle in radians. Canonicalized into [0, pi/2].
    phi : float, optional
        Default is 0. Relative phase between the V and H amplitudes,
        canonicalized into (-pi, pi].

    Notes
    -----
    Values are immutable after construction. When either amplitude
    vanishes the relative phase is meaningless and is stored as 0.

    """
    __slots__ = ("_theta", "_phi")

    def __init__(self, theta, phi=0.0):
        c_h = np.cos(theta)
        c_v = np.exp(1j * phi) * np.sin(theta)
        theta_c, phi_c = self._canonical(c_h, c_v)
        object.__setattr__(self, "_theta", theta_c)
        object.__setattr__(self, "_phi", phi_c)

    def __setattr__(self, name, value):
        raise AttributeError("PolarizationState is immutable")

    @staticmethod
    def _canonical(c_h, c_v):
        mag_h = abs(c_h)
        mag_v = abs(c_v)
        theta = float(np.arctan2(mag_v, mag_h))
        if mag_h < NORM_TOLERANCE or mag_v < NORM_TOLERANCE:
            phi = 0.0
        else:
            phi = _wrap_phase(np.angle(c_v) - np.angle(c_h))
        return theta, phi

    @classmethod
    def from_amplitudes(cls, c_h, c_v):
        """
        Builds a state from a (possibly unnormalized) Jones pair.

        The global phase is discarded and the pair is normalized.

        Raises
        ------
        ValueError
            If both amplitudes are zero.

        """
        norm = np.sqrt(abs(c_h) ** 2 + abs(c_v) ** 2)
        if norm == 0:
            raise ValueError("Cannot build a polarization from a zero Jones vector")
        state = cls.__new__(cls)
        theta, phi = cls._canonical(c_h / norm, c_v / norm)
        object.__setattr__(state, "_theta", theta)
        object.__setattr__(state, "_phi", phi)
        return state

    @classmethod
    def from_stokes(cls, stokes):
        """Builds the pure state whose Stokes vector points along `stokes`."""
        s1, s2, s3 = StokesVector(*stokes).normalized()
        theta = 0.5 * np.arccos(np.clip(s1, -1.0, 1.0))
        phi = np.arctan2(s3, s2)
        return cls(theta, phi)

    @classmethod
    def horizontal(cls):
        return cls(0.0)

    @classmethod
    def vertical(cls):
        return cls(np.pi / 2)

    @classmethod
    def diagonal(cls):
        return cls(np.pi / 4)

    @property
    def theta(self):
        return self._theta

    @property
    def phi(self):
        return self._phi

    @property
    def c_h(self):
        return complex(np.cos(self._theta))

    @property
    def c_v(self):
        return complex(np.exp(1j * self._phi) * np.sin(self._theta))

    @property
    def amplitudes(self):
        """The normalized Jones vector ``(c_H, c_V)`` as a complex array."""
        return np.array([self.c_h, self.c_v], dtype=complex)

    jones = amplitudes

    def expectation_o(self):
        """<O> for O = |H><H| - |V><V|, i.e. cos(2 theta)."""
        return float(np.cos(2 * self._theta))

    def __eq__(self, other):
        if not isinstance(other, PolarizationState):
            return NotImplemented
        return self._theta == other._theta and self._phi == other._phi

    def __hash__(self):
        return hash((self._theta, self._phi))

    def __repr__(self):
        return "PolarizationState(theta={0!r}, phi={1!r})".format(
            self._theta, self._phi)


class PolRotation:
    """
    A rotation of the Poincaré sphere by `retardance` radians about `axis`.

    Models linear-polarizer-free birefringent elements: fiber squeezers,
    the drifting DGD phase and the stabilizer as a whole.

    Parameters
    ----------
    axis : array-like of 3 floats
        Rotation axis on the sphere; normalized on construction.
    retardance : float
        Rotation angle in radians (right-handed about `axis`).

    """
    __slots__ = ("_axis", "_retardance")

    def __init__(self, axis, retardance):
        axis = np.asarray(axis, dtype=float)
        if axis.shape != (3,):
            raise ValueError(
                "Rotation axis must have 3 components, got shape {0}".format(
                    axis.shape))
        length = np.linalg.norm(axis)
        if length == 0:
            if retardance != 0:
                raise ValueError("A nonzero retardance needs a nonzero axis")
            axis = np.array([1.0, 0.0, 0.0])
        else:
            axis = axis / length
        axis.setflags(write=False)
        object.__setattr__(self, "_axis", axis)
        object.__setattr__(self, "_retardance", float(retardance))

    def __setattr__(self, name, value):
        raise AttributeError("PolRotation is immutable")

    @classmethod
    def identity(cls):
        return cls((1.0, 0.0, 0.0), 0.0)

    @classmethod
    def from_jones(cls, matrix):
        """Recovers the rotation represented by an SU(2) Jones matrix."""
        matrix = np.asarray(matrix, dtype=complex)
        det = np.linalg.det(matrix)
        matrix = matrix / np.sqrt(det)
        cos_half = np.real(np.trace(matrix)) / 2
        n1 = -np.imag(matrix[0, 0])
        n2 = -np.imag(matrix[1, 0])
        n3 = np.real(matrix[1, 0])
        vec = np.array([n1, n2, n3])
        sin_half = np.linalg.norm(vec)
        if sin_half < 1e-15:
            return cls.identity()
        retardance = 2 * np.arctan2(sin_half, cos_half)
        return cls(vec / sin_half, retardance)

    @property
    def axis(self):
        return self._axis

    @property
    def retardance(self):
        return self._retardance

    def jones(self):
        """The SU(2) matrix ``cos(d/2) I - i sin(d/2) n.sigma``."""
        half = self._retardance / 2
        generator = sum(n * p for n, p in zip(self._axis, _PAULI))
        return np.cos(half) * np.eye(2, dtype=complex) - 1j * np.sin(half) * generator

    def matrix(self):
        """The 3x3 Rodrigues rotation matrix acting on Stokes vectors."""
        n = self._axis
        k = np.array([[0, -n[2], n[1]],
                      [n[2], 0, -n[0]],
                      [-n[1], n[0], 0]])
        d = self._retardance
        return np.eye(3) + np.sin(d) * k + (1 - np.cos(d)) * (k @ k)

    def then(self, other):
        """The rotation applying `self` first and `other` second."""
        return PolRotation.from_jones(other.jones() @ self.jones())

    def compose(self, other):
        """The rotation applying `other` first and `self` second."""
        return other.then(self)

    def inverse(self):
        return PolRotation(self._axis, -self._retardance)

    def __repr__(self):
        return "PolRotation(axis={0!r}, retardance={1!r})".format(
            self._axis.tolist(), self._retardance)


def to_stokes(p):
    """
    Maps a pure state to its unit Stokes vector.

    Parameters
    ----------
    p : PolarizationState

    Returns
    -------
    StokesVector

    """
    c_h, c_v = p.amplitudes
    cross = np.conj(c_h) * c_v
    return StokesVector(float(abs(c_h) ** 2 - abs(c_v) ** 2),
                        float(2 * cross.real),
                        float(2 * cross.imag))


def stokes_from_amplitudes(c_h, c_v):
    """Stokes vector of a raw Jones pair, without canonicalization."""
    norm = abs(c_h) ** 2 + abs(c_v) ** 2
    cross = np.conj(c_h) * c_v
    return StokesVector(float((abs(c_h) ** 2 - abs(c_v) ** 2) / norm),
                        float(2 * cross.real / norm),
                        float(2 * cross.imag / norm))


def _check_unit(s, name):
    length = np.linalg.norm(np.asarray(s, dtype=float))
    if abs(length - 1) > UNIT_TOLERANCE:
        raise ValueError(
            "{0} must be a unit Stokes vector, got length {1:.9f}".format(
                name, length))


def fidelity(s1, s2):
    """
    Fidelity ``(1 + s1.s2) / 2`` between two pure polarizations.

    Raises
    ------
    ValueError
        If either vector is not of unit length (tolerance 1e-6).

    """
    _check_unit(s1, "s1")
    _check_unit(s2, "s2")
    value = 0.5 * (1 + float(np.dot(np.asarray(s1, dtype=float),
                                    np.asarray(s2, dtype=float))))
    return min(1.0, max(0.0, value))


def angle_between(s1, s2):
    """Angle in radians between two Stokes vectors."""
    a = np.asarray(s1, dtype=float)
    b = np.asarray(s2, dtype=float)
    cos = np.dot(a, b) / (np.linalg.norm(a) * np.linalg.norm(b))
    return float(np.arccos(np.clip(cos, -1.0, 1.0)))


def apply_rotation(r, p):
    """Applies rotation `r` to state `p`."""
    c_h, c_v = r.jones() @ p.amplitudes
    return PolarizationState.from_amplitudes(c_h, c_v)


def projector_overlap(a, b):
    """The inner product <a|b> as a complex amplitude."""
    return complex(np.vdot(a.amplitudes, b.amplitudes))
