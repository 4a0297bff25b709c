"""Multi-commodity flow theory: pairs routed one after another.

Each new pair uses only shortest paths and carries mu(k_n), the mean of the
min of two Poisson(k_n) degrees, where k_n is the mean degree of the part of
the network still unused. Routing a pair removes mu(k_n) paths of length
log N / log k_n, so

    k_{n+1} = k_n - mu(k_n) log N / (N log k_n)

and the network saturates at n* where k_{n*} = 1.
"""

from __future__ import annotations

import logging
import math
from functools import lru_cache

import numpy as np

from theory.models import Pdf, TheoryParams
from theory.small_n import convolve_power, min_of_poissons_pdf

logger = logging.getLogger(__name__)

SATURATION_EPS = 1e-6


@lru_cache(maxsize=4096)
def _mu_cached(k: float) -> float:
    return min_of_poissons_pdf(k).mean()


def mu(k: float) -> float:
    """E[min(X, Y)] for X, Y i.i.d. Poisson(k)."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if k == 0:
        return 0.0
    return _mu_cached(float(k))


def _saturated(k: float) -> bool:
    return k <= 1.0 + SATURATION_EPS or math.log(k) <= SATURATION_EPS


def _step(k: float, num_nodes: int) -> float:
    return k - mu(k) * math.log(num_nodes) / (num_nodes * math.log(k))


def effective_degree_trajectory(params: TheoryParams, n_max: int) -> np.ndarray:
    """k_0 .. k_{n_max}; floored at 1 and held constant once the network saturates."""
    ks = np.empty(n_max + 1)
    k = params.mean_degree
    ks[0] = k
    for i in range(1, n_max + 1):
        if not _saturated(k):
            k = max(1.0, _step(k, params.num_nodes))
        ks[i] = k
    return ks


def mc_flow_theory(params: TheoryParams, n_max: int) -> np.ndarray:
    """Mean MC flow for n = 1..n_max: sum of mu(k_n') while k_n' is above 1."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    ks = effective_degree_trajectory(params, n_max - 1)
    terms = np.array([0.0 if _saturated(k) else mu(k) for k in ks])
    return np.cumsum(terms)


def n_star_bounds(params: TheoryParams) -> tuple[float, float, float]:
    """(lower, upper, recursion) for the saturation point n*.

    lower = (log^2 <k> / 2) N / log N, upper = (<k> log <k> - <k> + 1) N / log N,
    recursion = first n with k_n <= 1. All zero when <k> <= 1.
    """
    k, size = params.mean_degree, params.num_nodes
    if k <= 1.0:
        return 0.0, 0.0, 0.0
    scale = size / math.log(size)
    lower = math.log(k) ** 2 / 2.0 * scale
    upper = (k * math.log(k) - k + 1.0) * scale
    n = 0
    cap = 100 * size
    while k > 1.0 and n < cap:
        if math.log(k) <= SATURATION_EPS:
            n += 1
            break
        k = _step(k, size)
        n += 1
    logger.debug("n_star_bounds N=%d k=%.3f lower=%.2f recursion=%d upper=%.2f", size, params.mean_degree, lower, n, upper)
    return lower, upper, float(n)


def mc_flow_small_n(params: TheoryParams) -> float:
    """n mu(<k>): pairs far apart, each carrying the min of its endpoint degrees."""
    return params.n * mu(params.mean_degree)


def mc_flow_pdf_er(params: TheoryParams) -> Pdf:
    """pmf of the sum of n independent single-pair flows min(k1, k2)."""
    single = min_of_poissons_pdf(params.mean_degree)
    if params.n == 0:
        return Pdf(np.array([0]), np.array([1.0]))
    mass = convolve_power(single.mass, params.n)
    keep = (1.0 - single.truncation_mass) ** params.n
    return Pdf(
        np.arange(mass.size),
        mass * keep,
        truncation_mass=1.0 - keep,
        info={"n": params.n, "mean_degree": params.mean_degree},
    )
