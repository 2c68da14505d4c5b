"""
Scatter of measured Stokes vectors around their mean.
"""
from collections import namedtuple
import logging

import numpy as np
import pandas as pd

from ..polarization import StokesVector
from ..polarization import fidelity

logger = logging.getLogger(__name__)


FidelityStats = namedtuple(
    "FidelityStats",
    ["mean_fidelity", "histogram", "bin_edges", "fraction_above_099",
     "fraction_above_098", "mean_vector", "fidelities"])
"""
Summary of per-sample fidelities against the mean Stokes vector.

Parameters
----------
mean_fidelity : float
histogram : numpy.ndarray
    Sample counts per fidelity bin.
bin_edges : numpy.ndarray
fraction_above_099, fraction_above_098 : float
mean_vector : StokesVector
    Normalized arithmetic mean of the samples.
fidelities : numpy.ndarray
    One fidelity per sample.

"""


def fidelity_stats(stokes_log, bins=50, fidelity_range=(0.95, 1.0)):
    """
    Fidelity of every sample against the normalized mean Stokes vector.

    Parameters
    ----------
    stokes_log : list(StokesVector)
        At least two unit Stokes vectors.
    bins : int, optional
        Default is 50.
    fidelity_range : tuple(float, float), optional
        Default is (0.95, 1.0). Extended downward if any sample falls
        below it.

    Returns
    -------
    FidelityStats

    Raises
    ------
    ValueError
        If fewer than two samples are given or their mean vanishes.

    """
    samples = np.array([tuple(s) for s in stokes_log], dtype=float)
    if len(samples) < 2:
        raise ValueError(
            "Need at least 2 Stokes samples, got {0}".format(len(samples)))
    mean = samples.mean(axis=0)
    if np.linalg.norm(mean) < 1e-12:
        raise ValueError("Mean Stokes vector vanishes; samples are degenerate")
    mean_vector = StokesVector.from_array(mean).normalized()
    values = np.array([fidelity(mean_vector, s) for s in samples])
    low = min(fidelity_range[0], float(values.min()))
    histogram, edges = np.histogram(values, bins=bins,
                                    range=(low, fidelity_range[1]))
    stats = FidelityStats(float(values.mean()), histogram, edges,
                          float(np.mean(values >= 0.99)),
                          float(np.mean(values >= 0.98)),
                          mean_vector, values)
    logger.debug("Mean fidelity {0:.4f} over {1} samples".format(
        stats.mean_fidelity, len(values)))
    return stats


def fidelity_histogram_frame(stats):
    edges = stats.bin_edges
    return pd.DataFrame({"left": edges[:-1],
                         "right": edges[1:],
                         "center": (edges[:-1] + edges[1:]) / 2,
                         "samples": stats.histogram})
