"""Small-n theory: terminal sets are far apart and every source/sink link is used.

The flow between the source set and the sink set is the smaller of the two
degree sums, F = min(z1, z2); the current follows the two-resistor law
I = c z1 z2 / (z1 + z2).
"""

from __future__ import annotations

import logging

import numpy as np
import scipy.signal
import scipy.special
import scipy.stats

from netgen.generators import power_law_pmf
from theory.models import Pdf, TheoryParams
from tools.defaults import resolve
from tools.errors import FitError, ParameterError

logger = logging.getLogger(__name__)

DEFAULT_TAIL_MASS = 1e-12
FIT_MIN_POINTS = 10


def tail_mass_target(tail: float | None = None) -> float:
    return float(resolve(tail, "pdf_tail_mass", DEFAULT_TAIL_MASS))


def poisson_pdf(lam: float, tail: float | None = None) -> Pdf:
    """Poisson(lam) pmf cut where the remaining upper tail is below ``tail``."""
    if lam < 0:
        raise ParameterError("Poisson mean must be non-negative", {"lam": lam})
    if lam == 0:
        return Pdf(np.array([0]), np.array([1.0]))
    tail = tail_mass_target(tail)
    k_max = int(scipy.stats.poisson.isf(tail, lam)) + 1
    support = np.arange(k_max + 1)
    return Pdf(
        support,
        scipy.stats.poisson.pmf(support, lam),
        truncation_mass=float(scipy.stats.poisson.sf(k_max, lam)),
        info={"lam": lam},
    )


def degree_sum_pdf_er(params: TheoryParams) -> Pdf:
    """P_Z(z): Poisson with mean n<k>."""
    return poisson_pdf(params.n * params.mean_degree)


def upper_tail(pz: Pdf) -> np.ndarray:
    """S(z) = P(Z >= z) on the support, truncated mass included."""
    return np.cumsum(pz.mass[::-1])[::-1] + pz.truncation_mass


def flow_pdf_from_degree_sums(pz: Pdf) -> Pdf:
    """pmf of min(Z1, Z2) for i.i.d. Z1, Z2 ~ pz, by direct summation.

    Phi(F) = 2 P(F) S(F) - P(F)^2 with S the upper tail of pz.
    """
    p = pz.mass
    phi = 2.0 * p * upper_tail(pz) - p * p
    return Pdf(pz.support.copy(), phi, truncation_mass=pz.truncation_mass**2, info={"form": "direct"})


def min_of_poissons_pdf(lam: float) -> Pdf:
    """pmf of min(X, Y), X and Y i.i.d. Poisson(lam), in closed form.

    P(X >= F) = gamma(F, lam) / Gamma(F), the regularized lower incomplete
    gamma; the F = 0 term takes the ratio as 1.
    """
    if lam == 0:
        return Pdf(np.array([0]), np.array([1.0]), info={"form": "closed", "lam": 0.0})
    pz = poisson_pdf(lam)
    support = pz.support
    ratio = np.ones(support.size)
    ratio[1:] = scipy.special.gammainc(support[1:].astype(np.float64), lam)
    p = pz.mass
    return Pdf(
        support.copy(),
        2.0 * p * ratio - p * p,
        truncation_mass=pz.truncation_mass**2,
        info={"form": "closed", "lam": lam},
    )


def flow_pdf_er(params: TheoryParams) -> Pdf:
    """Phi_n(F) on an ER graph: min of two Poisson(n<k>) degree sums."""
    return min_of_poissons_pdf(params.n * params.mean_degree)


def mean_flow_small_n(params: TheoryParams) -> float:
    """Total mean flow E[min(Z1, Z2)]."""
    if params.n == 0:
        return 0.0
    return flow_pdf_er(params).mean()


def mean_flow_per_node_small_n(params: TheoryParams) -> float:
    """Mean flow per source/sink, E[min(Z1, Z2)] / n."""
    if params.n == 0:
        return 0.0
    return mean_flow_small_n(params) / params.n


def _current_values(support: np.ndarray, c: float) -> np.ndarray:
    z = support.astype(np.float64)
    prod = np.multiply.outer(z, z)
    total = np.add.outer(z, z)
    out = np.zeros_like(prod)
    np.divide(c * prod, total, out=out, where=total > 0)
    return out


def current_pdf_small_n(params: TheoryParams, grid: np.ndarray, pz: Pdf | None = None) -> Pdf:
    """Mass of I = c z1 z2 / (z1 + z2) over i.i.d. degree sums, binned onto ``grid``.

    Each value goes to its nearest grid point (clamped at both ends);
    z1 = z2 = 0 contributes I = 0.
    """
    grid = np.asarray(grid, dtype=np.float64)
    if grid.ndim != 1 or grid.size == 0 or np.any(np.diff(grid) <= 0):
        raise ParameterError("grid must be a non-empty strictly increasing 1-d array")
    pz = pz if pz is not None else degree_sum_pdf_er(params)
    values = _current_values(pz.support, params.c).ravel()
    weights = np.multiply.outer(pz.mass, pz.mass).ravel()
    right = np.clip(np.searchsorted(grid, values), 0, grid.size - 1)
    left = np.clip(right - 1, 0, grid.size - 1)
    nearest = np.where(np.abs(values - grid[left]) <= np.abs(grid[right] - values), left, right)
    mass = np.bincount(nearest, weights=weights, minlength=grid.size)
    t = pz.truncation_mass
    return Pdf(grid, mass, truncation_mass=2.0 * t - t * t, info={"c": params.c})


def mean_current_small_n(params: TheoryParams, pz: Pdf | None = None) -> float:
    """Exact E[c z1 z2 / (z1 + z2)] over the truncated degree-sum pmf."""
    if params.n == 0:
        return 0.0
    pz = pz if pz is not None else degree_sum_pdf_er(params)
    values = _current_values(pz.support, params.c)
    return float(pz.mass @ values @ pz.mass)


def sf_flow_tail_exponent(gamma: float) -> float:
    """Exponent of the flow pdf tail Phi_n(F) ~ F^-(2 gamma - 1)."""
    if not gamma > 2:
        raise ParameterError("scale-free tail needs gamma > 2", {"gamma": gamma})
    return 2.0 * gamma - 1.0


def degree_pmf_sf(gamma: float, m: int, k_max: int) -> Pdf:
    """Exact truncated discrete power law on m..k_max."""
    k, pmf = power_law_pmf(gamma, m, k_max)
    return Pdf(k, pmf, info={"gamma": gamma, "m": m, "k_max": k_max})


def convolve_power(mass: np.ndarray, n: int) -> np.ndarray:
    """n-fold self-convolution of a pmf by repeated squaring (FFT), renormalized."""
    result = np.array([1.0])
    base = mass
    while n:
        if n & 1:
            result = np.clip(scipy.signal.fftconvolve(result, base), 0.0, None)
        n >>= 1
        if n:
            base = np.clip(scipy.signal.fftconvolve(base, base), 0.0, None)
    return result / result.sum()


def degree_sum_pdf_sf(params: TheoryParams) -> Pdf:
    """n-fold convolution of the power-law degree pmf (degrees up to N - 1)."""
    gamma = params.require_gamma()
    single = degree_pmf_sf(gamma, params.m, params.num_nodes - 1)
    if params.n == 0:
        return Pdf(np.array([0]), np.array([1.0]))
    mass = convolve_power(single.mass, params.n)
    support = np.arange(mass.size) + params.n * params.m
    return Pdf(support, mass, info={"gamma": gamma, "m": params.m, "n": params.n})


def flow_pdf_sf(params: TheoryParams) -> Pdf:
    """Small-n flow pmf on a configuration-model graph."""
    return flow_pdf_from_degree_sums(degree_sum_pdf_sf(params))


def intra_set_link_correction(params: TheoryParams) -> tuple[float, float]:
    """(exp(-n^2 <k> / N), sqrt(N / <k>)).

    The first term approximates the chance that no link joins two terminals
    of the same set; the second is the n at which it falls to 1/e.
    """
    n, k, size = params.n, params.mean_degree, params.num_nodes
    return float(np.exp(-n * n * k / size)), float(np.sqrt(size / k))


def intra_set_link_probability_exact(params: TheoryParams) -> float:
    """(1 - n/N)^(n <k>)."""
    n = params.n
    return float((1.0 - n / params.num_nodes) ** (n * params.mean_degree))


def fit_c(sim_points) -> float:
    """Least-squares c in I = c z1 z2 / (z1 + z2), line through the origin.

    ``sim_points`` is an iterable of (z1, z2, I) triples, at least ten.
    """
    pts = np.asarray(list(sim_points), dtype=np.float64).reshape(-1, 3)
    if pts.shape[0] < FIT_MIN_POINTS:
        raise FitError(f"need at least {FIT_MIN_POINTS} points", {"points": int(pts.shape[0])})
    z1, z2, current = pts[:, 0], pts[:, 1], pts[:, 2]
    total = z1 + z2
    h = np.zeros_like(total)
    np.divide(z1 * z2, total, out=h, where=total > 0)
    denom = float(h @ h)
    if denom == 0:
        raise FitError("all points have z1 z2 = 0", {"points": int(pts.shape[0])})
    c = float(h @ current) / denom
    logger.debug("fit_c points=%d c=%.6f", pts.shape[0], c)
    return c
