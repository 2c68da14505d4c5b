"""
The temporal pointer as a weighted superposition of shifted Gaussians.

All times are normalized, ``t~ = t / tau_G``. Each basis function is the
unit-norm amplitude ``pi**-0.25 * exp(-(t~ - c)**2 / 2)``, so a single
term has intensity standard deviation ``1/sqrt(2)``.
"""
from collections import namedtuple
import logging

import numpy as np
from scipy.integrate import cumulative_trapezoid

logger = logging.getLogger(__name__)

PRUNE_TOLERANCE = 1e-15
MERGE_TOLERANCE = 1e-12
MIN_NORM2 = 1e-30
INTENSITY_VARIANCE = 0.5


GaussianTerm = namedtuple("GaussianTerm", ["weight", "center"])
"""
One shifted Gaussian of the pointer superposition.

Parameters
----------
weight : float or complex
    Amplitude coefficient. Real unless an analyzer other than the
    prepared state was used for the projections.
center : float
    Normalized arrival time of the Gaussian's center.

"""


def merge_terms(terms, tolerance=MERGE_TOLERANCE):
    """
    Sorts terms by center, sums the weights of centers closer than
    `tolerance` and drops negligible weights.

    Returns
    -------
    tuple(GaussianTerm)

    """
    ordered = sorted(terms, key=lambda term: term.center)
    merged = []
    for term in ordered:
        if merged and abs(term.center - merged[-1].center) < tolerance:
            last = merged[-1]
            merged[-1] = GaussianTerm(last.weight + term.weight, last.center)
        else:
            merged.append(term)
    return tuple(t for t in merged if abs(t.weight) >= PRUNE_TOLERANCE)


class PointerState:
    """
    An (unnormalized) pointer wavepacket.

    Parameters
    ----------
    terms : iterable(GaussianTerm)
        The Gaussian components. Centers closer than 1e-12 are merged.

    Attributes
    ----------
    terms : tuple(GaussianTerm)
        Components sorted by center.
    sigma_amp : float
        Amplitude width of every component, fixed at 1.

    """
    sigma_amp = 1.0

    def __init__(self, terms):
        terms = [GaussianTerm(t[0], float(t[1])) for t in terms]
        for term in terms:
            if not np.isfinite(term.weight) or not np.isfinite(term.center):
                raise ValueError(
                    "Pointer term must be finite, got {0}".format(term))
        self.terms = merge_terms(terms)

    @classmethod
    def initial(cls):
        """The unshifted unit-weight wavepacket."""
        return cls([GaussianTerm(1.0, 0.0)])

    @property
    def weights(self):
        return np.array([t.weight for t in self.terms])

    @property
    def centers(self):
        return np.array([t.center for t in self.terms], dtype=float)

    def __len__(self):
        return len(self.terms)

    def _mixture(self):
        # Cross term (j, k) is a Gaussian of variance 1/2 centered at the
        # midpoint, scaled by Re(w_j w_k*) exp(-(c_j - c_k)^2 / 4).
        w = self.weights.astype(complex)
        c = self.centers
        diff = c[:, None] - c[None, :]
        mass = np.real(w[:, None] * np.conj(w)[None, :]) * np.exp(-diff ** 2 / 4)
        mid = (c[:, None] + c[None, :]) / 2
        return mass, mid

    def norm2(self):
        """Closed-form squared norm of the amplitude."""
        if not self.terms:
            return 0.0
        mass, _ = self._mixture()
        return max(0.0, float(mass.sum()))

    def moments(self):
        """
        Mean and standard deviation of the normalized intensity.

        Returns
        -------
        tuple(float, float)

        Raises
        ------
        ValueError
            If the state has been filtered out (norm² < 1e-30).

        """
        norm2 = self.norm2()
        if norm2 < MIN_NORM2:
            raise ValueError(
                "Pointer state is fully filtered out (norm^2 = {0:.3e})".format(
                    norm2))
        mass, mid = self._mixture()
        total = mass.sum()
        mean = float((mass * mid).sum() / total)
        second = float((mass * (mid ** 2 + INTENSITY_VARIANCE)).sum() / total)
        return mean, float(np.sqrt(max(0.0, second - mean ** 2)))

    def amplitude(self, t):
        """The amplitude psi(t~) on an array of normalized times."""
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        for weight, center in self.terms:
            out += weight * np.pi ** -0.25 * np.exp(-(t - center) ** 2 / 2)
        return out

    def intensity(self, t):
        """|psi(t~)|^2, unnormalized."""
        return np.abs(self.amplitude(t)) ** 2

    def normalized(self):
        """A copy rescaled to unit norm."""
        norm2 = self.norm2()
        if norm2 < MIN_NORM2:
            raise ValueError("Cannot normalize a filtered-out pointer state")
        scale = 1.0 / np.sqrt(norm2)
        return PointerState([GaussianTerm(w * scale, c) for w, c in self.terms])

    def sample_arrivals(self, rng, n, step=0.002, margin=8.0):
        """
        Draws `n` normalized arrival times from the intensity.

        Uses inverse-transform sampling of the intensity tabulated on a
        grid of spacing `step` that extends `margin` beyond the outermost
        centers.

        Parameters
        ----------
        rng : numpy.random.Generator
        n : int
        step : float, optional
            Default is 0.002.
        margin : float, optional
            Default is 8.

        Returns
        -------
        numpy.ndarray

        """
        if n == 0:
            return np.empty(0, dtype=float)
        if self.norm2() < MIN_NORM2:
            raise ValueError("Cannot sample from a filtered-out pointer state")
        centers = self.centers
        grid = np.arange(centers.min() - margin,
                         centers.max() + margin + step, step)
        cdf = cumulative_trapezoid(self.intensity(grid), grid, initial=0.0)
        cdf /= cdf[-1]
        return np.interp(rng.random(n), cdf, grid)

    def __eq__(self, other):
        if not isinstance(other, PointerState):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        return "PointerState({0} terms, norm2={1:.6g})".format(
            len(self.terms), self.norm2())


def survival_probability(p):
    """
    Probability that the photon survives all projections.

    This is the squared norm of the unnormalized pointer state, clipped
    into [0, 1].
    """
    return min(1.0, p.norm2())


def pointer_moments(p):
    """Mean and standard deviation (normalized time) of `p`'s intensity."""
    return p.moments()
