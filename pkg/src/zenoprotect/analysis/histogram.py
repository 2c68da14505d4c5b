"""
Arrival-time histograms, peak windowing and moment extraction.
"""
import logging

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

WINDOW_FRACTION = 0.005
NORMALIZATION_TOLERANCE = 1e-12


class ArrivalHistogram:
    """
    Binned photon arrival times.

    Parameters
    ----------
    edges : array-like of float
        Bin edges in ns, strictly increasing, one more than `counts`.
    counts : array-like of float
        Non-negative counts (or probabilities) per bin.
    windowed : bool, optional
        Default is False.
    normalized : bool, optional
        Default is False.

    """

    def __init__(self, edges, counts, windowed=False, normalized=False):
        self.edges = np.asarray(edges, dtype=float)
        self.counts = np.asarray(counts, dtype=float)
        if self.edges.ndim != 1 or len(self.edges) != len(self.counts) + 1:
            raise ValueError(
                "Need len(edges) == len(counts) + 1, got {0} and {1}".format(
                    len(self.edges), len(self.counts)))
        if np.any(np.diff(self.edges) <= 0):
            raise ValueError("Histogram edges must be strictly increasing")
        if np.any(self.counts < 0):
            raise ValueError("Histogram counts must be non-negative")
        self.windowed = windowed
        self.normalized = normalized

    @classmethod
    def from_arrivals(cls, times_ns, bin_width_ps=20.0, time_range_ns=None):
        """
        Histograms arrival times with bins centered on multiples of the
        bin width, so TDC-quantized times never sit on an edge.

        Parameters
        ----------
        times_ns : array-like
        bin_width_ps : float, optional
            Default is 20 (the TDC resolution).
        time_range_ns : tuple(float, float) or None, optional
            Default spans the data.

        """
        times_ns = np.asarray(times_ns, dtype=float)
        width = bin_width_ps * 1e-3
        if time_range_ns is None:
            if len(times_ns) == 0:
                raise ValueError("Cannot histogram an empty arrival record")
            time_range_ns = (times_ns.min(), times_ns.max())
        first = int(np.floor(time_range_ns[0] / width + 0.5))
        last = int(np.floor(time_range_ns[1] / width + 0.5))
        edges = (np.arange(first, last + 2) - 0.5) * width
        counts, _ = np.histogram(times_ns, bins=edges)
        return cls(edges, counts)

    def __len__(self):
        return len(self.counts)

    @property
    def centers(self):
        return (self.edges[:-1] + self.edges[1:]) / 2

    @property
    def widths(self):
        return np.diff(self.edges)

    @property
    def bin_width_ps(self):
        return float(np.mean(self.widths) * 1e3)

    @property
    def total(self):
        return float(self.counts.sum())

    def peak_index(self):
        """Index of the largest bin; ties go to the earliest."""
        return int(np.argmax(self.counts))

    def normalize(self):
        """
        Returns the histogram of probabilities P_i.

        Raises
        ------
        ValueError
            If the histogram is empty.

        """
        total = self.total
        if total <= 0:
            raise ValueError("Cannot normalize an empty histogram")
        return ArrivalHistogram(self.edges, self.counts / total,
                                windowed=self.windowed, normalized=True)

    def rebin(self, k):
        """Merges every `k` consecutive bins; a short tail is zero-padded."""
        if int(k) != k or k < 1:
            raise ValueError("Rebin factor must be a positive integer, got {0}".format(k))
        k = int(k)
        if k == 1:
            return self
        n = int(np.ceil(len(self.counts) / k)) * k
        pad = n - len(self.counts)
        counts = np.concatenate([self.counts, np.zeros(pad)])
        width = self.widths[-1]
        edges = np.concatenate(
            [self.edges, self.edges[-1] + width * np.arange(1, pad + 1)])
        return ArrivalHistogram(edges[::k], counts.reshape(-1, k).sum(axis=1),
                                windowed=self.windowed,
                                normalized=self.normalized)

    def subdivide(self, k):
        """Splits every bin into `k` equal bins with proportional counts."""
        if int(k) != k or k < 1:
            raise ValueError("Subdivision factor must be a positive integer, got {0}".format(k))
        k = int(k)
        fractions = np.arange(k) / k
        starts = self.edges[:-1, None] + self.widths[:, None] * fractions[None, :]
        edges = np.append(starts.ravel(), self.edges[-1])
        counts = np.repeat(self.counts / k, k)
        return ArrivalHistogram(edges, counts, windowed=self.windowed,
                                normalized=self.normalized)

    def to_frame(self):
        return pd.DataFrame({"left_ns": self.edges[:-1],
                             "right_ns": self.edges[1:],
                             "center_ns": self.centers,
                             "value": self.counts})


def window(h, fraction=WINDOW_FRACTION):
    """
    Truncates the histogram around its peak.

    Starting at the peak bin, bins are scanned toward earlier times until
    the first bin below ``fraction * peak``; that bin and everything
    beyond it is removed. The later side is treated the same way.

    Parameters
    ----------
    h : ArrivalHistogram
    fraction : float, optional
        Default is 0.005.

    Returns
    -------
    ArrivalHistogram

    Raises
    ------
    ValueError
        If the histogram has no nonzero bin.

    """
    counts = h.counts
    if len(counts) == 0 or counts.max() <= 0:
        raise ValueError("Cannot window an all-zero histogram")
    peak = h.peak_index()
    threshold = fraction * counts[peak]
    below = counts < threshold
    start = peak
    while start > 0 and not below[start - 1]:
        start -= 1
    stop = peak
    while stop < len(counts) - 1 and not below[stop + 1]:
        stop += 1
    trimmed = start > 0 or stop < len(counts) - 1
    return ArrivalHistogram(h.edges[start:stop + 2], counts[start:stop + 1],
                            windowed=True,
                            normalized=h.normalized and not trimmed)


def moments(h):
    """
    Mean arrival time t_M and standard deviation of a normalized histogram.

    Returns
    -------
    tuple(float, float)
        ``(t_M, std)`` in the units of the bin centers.

    Raises
    ------
    ValueError
        If the probabilities do not sum to 1 within 1e-12.

    """
    total = h.total
    if abs(total - 1) > NORMALIZATION_TOLERANCE:
        raise ValueError(
            "moments() needs a normalized histogram (sum = {0!r})".format(total))
    t = h.centers
    p = h.counts
    t_m = float(np.dot(p, t))
    std = float(np.sqrt(np.dot(p, (t - t_m) ** 2)))
    return t_m, std
