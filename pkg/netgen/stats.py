"""Structural statistics used to check generated graphs."""

from __future__ import annotations

import numpy as np
import scipy.sparse.csgraph
import scipy.stats

from netgen.models import Graph
from tools.errors import FitError


def degree_histogram(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """(k values with non-zero count, counts)."""
    counts = np.bincount(g.degree)
    k = np.flatnonzero(counts)
    return k, counts[k]


def degree_exponent_estimate(g: Graph, k_min: int, k_max: int, bins_per_decade: int = 8) -> float:
    """Slope of log P(k) vs log k from log-binned degrees in [k_min, k_max].

    For a power law P(k) ∝ k^-gamma the slope is -gamma.
    """
    deg = g.degree[(g.degree >= k_min) & (g.degree <= k_max)].astype(np.float64)
    if deg.size == 0 or k_max <= k_min:
        raise FitError("no degrees in fit range", {"k_min": k_min, "k_max": k_max})
    decades = np.log10((k_max + 1) / k_min)
    edges = k_min * np.logspace(0, decades, max(2, int(np.ceil(decades * bins_per_decade))) + 1)
    counts, edges = np.histogram(deg, bins=edges)
    # Integers inside each bin, so the estimate is a discrete pmf.
    lo = np.ceil(edges[:-1]).astype(np.int64)
    hi = np.floor(edges[1:] - 1e-9).astype(np.int64)
    widths = hi - lo + 1
    ok = (counts > 0) & (widths > 0)
    if ok.sum() < 3:
        raise FitError("too few populated bins for a slope", {"bins": int(ok.sum())})
    centers = np.array([np.exp(np.log(np.arange(a, b + 1)).mean()) for a, b in zip(lo[ok], hi[ok])])
    density = counts[ok] / widths[ok]
    fit = scipy.stats.linregress(np.log(centers), np.log(density))
    return float(fit.slope)


def giant_component_fraction(g: Graph) -> float:
    """Fraction of nodes in the largest connected component."""
    _, labels = scipy.sparse.csgraph.connected_components(g.adjacency(), directed=False)
    return float(np.bincount(labels).max() / g.num_nodes)


def component_labels(g: Graph) -> np.ndarray:
    _, labels = scipy.sparse.csgraph.connected_components(g.adjacency(), directed=False)
    return labels
