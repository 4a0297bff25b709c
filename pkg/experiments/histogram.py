"""Empirical pdfs of transport values, linear or logarithmic bins."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
import scipy.stats

from experiments.models import ExperimentConfig
from experiments.runner import collect_samples
from tools.errors import FitError, SweepError

logger = logging.getLogger(__name__)

DEFAULT_BINS_PER_DECADE = 5


@dataclass
class FlowHistogram:
    """Bins [bin_left, bin_right) with probability ``mass`` each.

    ``zero_mass`` holds the share of zero values that log bins cannot show.
    ``density`` divides mass by the bin width (integer count for integer data).
    """

    bin_left: np.ndarray
    bin_right: np.ndarray
    mass: np.ndarray
    width: np.ndarray
    n: int = 1
    samples: int = 0
    log_binned: bool = False
    zero_mass: float = 0.0
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def density(self) -> np.ndarray:
        return self.mass / self.width

    @property
    def centers(self) -> np.ndarray:
        if self.log_binned:
            return np.sqrt(self.bin_left * self.bin_right)
        return (self.bin_left + self.bin_right) / 2.0

    def collapse(self, gamma: float) -> FlowHistogram:
        """Mass divided by n^(2 gamma - 2) so scale-free curves for different n overlay."""
        factor = float(self.n) ** (2.0 * gamma - 2.0)
        return FlowHistogram(
            self.bin_left.copy(),
            self.bin_right.copy(),
            self.mass / factor,
            self.width.copy(),
            n=self.n,
            samples=self.samples,
            log_binned=self.log_binned,
            zero_mass=self.zero_mass / factor,
            info={**self.info, "collapsed_gamma": gamma},
        )

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"bin_left": self.bin_left, "bin_right": self.bin_right, "mass": self.mass})

    def to_csv(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.to_frame().to_csv(path, index=False, float_format="%.12g")
        return path

    def summary(self) -> dict[str, Any]:
        return {"n": self.n, "samples": self.samples, "bins": int(self.mass.size), "log_binned": self.log_binned}


def _as_values(values) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64).ravel()
    if arr.size == 0:
        raise SweepError("cannot histogram an empty sample")
    return arr


def linear_histogram(values, *, n: int = 1, bin_width: float = 1.0) -> FlowHistogram:
    """Bins of ``bin_width`` aligned at multiples of it; unit bins suit integer flows."""
    arr = _as_values(values)
    lo = np.floor(arr.min() / bin_width) * bin_width
    count = int(np.floor((arr.max() - lo) / bin_width)) + 1
    edges = lo + bin_width * np.arange(count + 1)
    idx = np.minimum(np.floor((arr - lo) / bin_width).astype(np.int64), count - 1)
    mass = np.bincount(idx, minlength=count) / arr.size
    integral = bool(np.all(arr == np.round(arr)))
    return FlowHistogram(
        edges[:-1],
        edges[1:],
        mass,
        np.full(count, bin_width),
        n=n,
        samples=int(arr.size),
        info={"integral": integral},
    )


def log_binned_histogram(values, *, n: int = 1, bins_per_decade: int = DEFAULT_BINS_PER_DECADE) -> FlowHistogram:
    """Logarithmic bins over the positive values; empty bins are dropped.

    Integer-valued data use the number of integers in each bin as its width.
    """
    arr = _as_values(values)
    positive = arr[arr > 0]
    zero_mass = float(np.mean(arr <= 0))
    if positive.size == 0:
        raise SweepError("no positive values for logarithmic bins")
    lo = np.floor(np.log10(positive.min()) * bins_per_decade)
    hi = np.floor(np.log10(positive.max()) * bins_per_decade) + 1
    edges = 10.0 ** (np.arange(lo, hi + 1) / bins_per_decade)
    counts, _ = np.histogram(positive, bins=edges)
    integral = bool(np.all(positive == np.round(positive)))
    if integral:
        width = (np.ceil(edges[1:]) - np.ceil(edges[:-1])).astype(np.float64)
    else:
        width = np.diff(edges)
    keep = (counts > 0) & (width > 0)
    return FlowHistogram(
        edges[:-1][keep],
        edges[1:][keep],
        counts[keep] / arr.size,
        width[keep],
        n=n,
        samples=int(arr.size),
        log_binned=True,
        zero_mass=zero_mass,
        info={"integral": integral, "bins_per_decade": bins_per_decade},
    )


def tail_slope(hist: FlowHistogram, min_value: float) -> float:
    """Least-squares slope of log density vs log bin center for bins with left edge >= min_value."""
    sel = (hist.bin_left >= min_value) & (hist.mass > 0)
    if sel.sum() < 3:
        raise FitError("fewer than three tail bins", {"bins": int(sel.sum()), "min_value": min_value})
    fit = scipy.stats.linregress(np.log(hist.centers[sel]), np.log(hist.density[sel]))
    return float(fit.slope)


def flow_histogram(
    cfg: ExperimentConfig,
    n_list: list[int],
    *,
    log_bins: bool = False,
    bins_per_decade: int = DEFAULT_BINS_PER_DECADE,
    progress: bool | None = None,
) -> dict[int, FlowHistogram]:
    """Empirical pdf of the transport value for each n in ``n_list``."""
    samples = collect_samples(cfg, sorted(set(n_list)), progress=progress)
    out: dict[int, FlowHistogram] = {}
    for n, frame in samples.items():
        if frame.empty:
            raise SweepError(f"no successful samples for n={n}", {"n": n})
        values = frame["value"].to_numpy()
        if log_bins:
            out[n] = log_binned_histogram(values, n=n, bins_per_decade=bins_per_decade)
        else:
            out[n] = linear_histogram(values, n=n)
        logger.debug("flow_histogram n=%d samples=%d bins=%d", n, values.size, out[n].mass.size)
    return out
