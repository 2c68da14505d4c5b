"""
Plot-ready tables for the count traces, the fidelity histogram, raw
arrival histograms and windowed arrival probabilities, and optional SVG
rendering of each.
"""
import logging
import os

import numpy as np
import pandas as pd

from .fidelity import fidelity_histogram_frame
from .fidelity import fidelity_stats
from .histogram import ArrivalHistogram
from .histogram import window

logger = logging.getLogger(__name__)

COUNT_TRACES = "count_traces"
FIDELITY_HISTOGRAM = "fidelity_histogram"
ARRIVAL_HISTOGRAMS = "arrival_histograms"
WINDOWED_PROBABILITIES = "windowed_probabilities"


def count_trace_frame(traces, bin_s=10.0):
    """
    Binned counts of each stabilization arm.

    Parameters
    ----------
    traces : dict(str, StabilizationTrace)
    bin_s : float, optional
        Default is 10.

    """
    frames = []
    for arm, trace in traces.items():
        binned = trace.binned_counts(bin_s)
        frames.append(pd.DataFrame({"arm": arm,
                                    "bin_start_s": np.arange(len(binned)) * bin_s,
                                    "counts": binned}))
    if not frames:
        return pd.DataFrame(columns=["arm", "bin_start_s", "counts"])
    return pd.concat(frames, ignore_index=True)


def fidelity_frame(stokes_log, bins=50):
    return fidelity_histogram_frame(fidelity_stats(stokes_log, bins=bins))


def arrival_histogram_frame(arrivals, bin_width_ps=20.0):
    """
    Raw arrival histograms, one block per label.

    Parameters
    ----------
    arrivals : dict(str, array-like)
        Arrival times (ns) per label.
    bin_width_ps : float, optional
        Default is 20.

    """
    frames = []
    for label, times in arrivals.items():
        h = ArrivalHistogram.from_arrivals(times, bin_width_ps)
        frames.append(pd.DataFrame({"label": label,
                                    "center_ns": h.centers,
                                    "counts": h.counts.astype(np.int64)}))
    if not frames:
        return pd.DataFrame(columns=["label", "center_ns", "counts"])
    return pd.concat(frames, ignore_index=True)


def windowed_probability_frame(arrivals, t_m_ns, bin_width_ps=20.0):
    """
    Windowed, normalized arrival probabilities with each label's t_M.

    Parameters
    ----------
    arrivals : dict(str, array-like)
    t_m_ns : dict(str, float)
        Mean arrival time marker per label.
    bin_width_ps : float, optional

    """
    frames = []
    for label, times in arrivals.items():
        h = window(ArrivalHistogram.from_arrivals(times, bin_width_ps)).normalize()
        frames.append(pd.DataFrame({"label": label,
                                    "center_ns": h.centers,
                                    "probability": h.counts,
                                    "t_m_ns": t_m_ns.get(label, np.nan)}))
    if not frames:
        return pd.DataFrame(columns=["label", "center_ns", "probability", "t_m_ns"])
    return pd.concat(frames, ignore_index=True)


def render_figure(frame, kind, output_path, dpi=150):
    """
    Draws one of the plot tables as an SVG.

    Parameters
    ----------
    frame : pandas.DataFrame
    kind : str
        One of the table kinds defined in this module.
    output_path : str
    dpi : int, optional
        Default is 150.

    """
    import matplotlib
    backend = matplotlib.get_backend()
    if "inline" not in backend:
        matplotlib.use("SVG")
    import matplotlib.pyplot as plt

    os.makedirs(os.path.dirname(output_path) or ".", exist_ok=True)
    fig, ax = plt.subplots()
    if kind == COUNT_TRACES:
        for arm, block in frame.groupby("arm", sort=False):
            ax.plot(block["bin_start_s"], block["counts"], marker="o", ms=3,
                    label=str(arm))
        ax.set_xlabel("Time (s)")
        ax.set_ylabel("Counts per bin")
    elif kind == FIDELITY_HISTOGRAM:
        ax.bar(frame["center"], frame["samples"],
               width=(frame["right"] - frame["left"]).to_numpy())
        ax.set_xlabel("Fidelity")
        ax.set_ylabel("Samples")
    elif kind == ARRIVAL_HISTOGRAMS:
        for label, block in frame.groupby("label", sort=False):
            ax.semilogy(block["center_ns"], block["counts"].clip(lower=0.5),
                        label=str(label))
        ax.set_xlabel("Arrival time (ns)")
        ax.set_ylabel("Counts")
    elif kind == WINDOWED_PROBABILITIES:
        for label, block in frame.groupby("label", sort=False):
            line, = ax.plot(block["center_ns"], block["probability"],
                            label=str(label))
            ax.axvline(block["t_m_ns"].iloc[0], color=line.get_color(), lw=0.8)
        ax.set_xlabel("Arrival time (ns)")
        ax.set_ylabel("Probability")
    else:
        plt.close(fig)
        raise ValueError("Unknown figure kind {0!r}".format(kind))
    if ax.get_legend_handles_labels()[0]:
        ax.legend()
    fig.savefig(output_path, format="svg", dpi=dpi)
    plt.close(fig)
    logger.info("Rendered {0}".format(output_path))
