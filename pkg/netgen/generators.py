"""Random graph generators: Erdős–Rényi G(N, p) and the configuration model.

Both are pure functions of (parameters, seed): all randomness comes from a
Philox stream keyed by the seed, so the same call gives the same edges on
every platform.
"""

from __future__ import annotations

import logging
from collections import deque

import networkx as nx
import numpy as np

from netgen.models import ConfigModelReport, Graph
from tools.defaults import resolve
from tools.errors import GenerationError, ParameterError
from tools.seeding import STREAM_GRAPH, make_rng

logger = logging.getLogger(__name__)

MAX_GRAPHICAL_REDRAWS = 10
MAX_PARITY_REDRAWS = 1000


def gen_er(num_nodes: int, mean_degree: float, seed: int) -> Graph:
    """G(N, p) with p = mean_degree / (N - 1); every pair drawn independently."""
    if num_nodes < 2:
        raise ParameterError("ER graph needs N >= 2", {"num_nodes": num_nodes})
    if not 0 < mean_degree <= num_nodes - 1:
        raise ParameterError(
            "mean degree must lie in (0, N-1]", {"num_nodes": num_nodes, "mean_degree": mean_degree}
        )
    p = mean_degree / (num_nodes - 1)
    rng = make_rng(seed, STREAM_GRAPH)
    rows: list[np.ndarray] = []
    for u in range(num_nodes - 1):
        hits = np.flatnonzero(rng.random(num_nodes - 1 - u) < p)
        if hits.size:
            block = np.empty((hits.size, 2), dtype=np.int64)
            block[:, 0] = u
            block[:, 1] = hits + u + 1
            rows.append(block)
    edges = np.concatenate(rows) if rows else np.empty((0, 2), dtype=np.int64)
    g = Graph(num_nodes, edges, info={"model": "er", "mean_degree": mean_degree, "seed": seed})
    logger.debug("gen_er N=%d p=%.6g edges=%d", num_nodes, p, g.num_edges)
    return g


def power_law_pmf(gamma: float, m: int, k_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Normalized discrete P(k) ∝ k^-gamma on m..k_max."""
    if k_max < m:
        raise ParameterError("k_max below the minimum degree", {"m": m, "k_max": k_max})
    k = np.arange(m, k_max + 1, dtype=np.int64)
    w = k.astype(np.float64) ** (-gamma)
    return k, w / w.sum()


def sample_power_law_degrees(
    rng: np.random.Generator, size: int, gamma: float, m: int, k_max: int
) -> np.ndarray:
    """Inverse-CDF draws from the exact truncated discrete power law."""
    k, pmf = power_law_pmf(gamma, m, k_max)
    cdf = np.cumsum(pmf)
    cdf[-1] = 1.0
    idx = np.searchsorted(cdf, rng.random(size), side="right")
    return k[np.minimum(idx, k.size - 1)]


def _draw_degree_sequence(
    rng: np.random.Generator, num_nodes: int, gamma: float, m: int
) -> tuple[np.ndarray, int, int]:
    k_max = num_nodes - 1
    for graphical_redraws in range(MAX_GRAPHICAL_REDRAWS + 1):
        degrees = sample_power_law_degrees(rng, num_nodes, gamma, m, k_max)
        parity_redraws = 0
        while degrees.sum() % 2 and parity_redraws < MAX_PARITY_REDRAWS:
            degrees[-1] = sample_power_law_degrees(rng, 1, gamma, m, k_max)[0]
            parity_redraws += 1
        if degrees.sum() % 2:
            continue
        if nx.is_graphical(degrees.tolist(), method="eg"):
            return degrees, parity_redraws, graphical_redraws
    raise GenerationError(
        "could not draw a graphical degree sequence",
        {"num_nodes": num_nodes, "gamma": gamma, "m": m, "redraws": MAX_GRAPHICAL_REDRAWS},
    )


def _match_stubs(
    rng: np.random.Generator, degrees: np.ndarray, budget: int
) -> tuple[list[tuple[int, int]], int, int]:
    """Pair stubs uniformly; fix self-loops/multi-edges by double-edge rewiring.

    Returns (edges, rewire_attempts, deleted_stubs).
    """
    stubs = np.repeat(np.arange(degrees.size, dtype=np.int64), degrees)
    rng.shuffle(stubs)
    edge_list: list[tuple[int, int]] = []
    edge_set: set[tuple[int, int]] = set()
    bad: deque[tuple[int, int]] = deque()
    for a, b in stubs.reshape(-1, 2).tolist():
        e = (a, b) if a < b else (b, a)
        if a == b or e in edge_set:
            bad.append((a, b))
        else:
            edge_set.add(e)
            edge_list.append(e)

    attempts = 0
    while bad and attempts < budget and edge_list:
        attempts += 1
        a, b = bad.popleft()
        idx = int(rng.integers(len(edge_list)))
        c, d = edge_list[idx]
        if rng.random() < 0.5:
            c, d = d, c
        e1 = (a, c) if a < c else (c, a)
        e2 = (b, d) if b < d else (d, b)
        if a == c or b == d or e1 == e2 or e1 in edge_set or e2 in edge_set:
            bad.append((a, b))
            continue
        edge_set.discard(edge_list[idx])
        edge_list[idx] = e1
        edge_list.append(e2)
        edge_set.add(e1)
        edge_set.add(e2)
    return edge_list, attempts, 2 * len(bad)


def gen_sf_config(
    num_nodes: int,
    gamma: float,
    m: int,
    seed: int,
    *,
    rewire_factor: int | None = None,
    warn_deleted_fraction: float | None = None,
    max_deleted_fraction: float | None = None,
) -> Graph:
    """Configuration-model graph with P(k) ∝ k^-gamma, m <= k <= N-1.

    Colliding stubs (self-loops, multi-edges) are rewired against random
    accepted edges up to ``rewire_factor * N`` attempts; what still collides
    is deleted. The report is stored in ``graph.info["config_model"]``.
    """
    if gamma <= 2:
        raise ParameterError("configuration model needs gamma > 2", {"gamma": gamma})
    if m < 1 or num_nodes < 2 or m > num_nodes - 1:
        raise ParameterError("need 1 <= m <= N-1", {"m": m, "num_nodes": num_nodes})
    rewire_factor = resolve(rewire_factor, "sf_rewire_factor", 100)
    warn_deleted_fraction = resolve(warn_deleted_fraction, "sf_warn_deleted_fraction", 0.02)
    max_deleted_fraction = resolve(max_deleted_fraction, "sf_max_deleted_fraction", 0.10)

    rng = make_rng(seed, STREAM_GRAPH)
    degrees, parity_redraws, graphical_redraws = _draw_degree_sequence(rng, num_nodes, gamma, m)
    edges, attempts, deleted = _match_stubs(rng, degrees, rewire_factor * num_nodes)
    report = ConfigModelReport(
        total_stubs=int(degrees.sum()),
        rewire_attempts=attempts,
        deleted_stubs=deleted,
        parity_redraws=parity_redraws,
        graphical_redraws=graphical_redraws,
    )
    if report.deleted_fraction > max_deleted_fraction:
        raise GenerationError("too many colliding stubs deleted", report.to_dict())
    if report.deleted_fraction > warn_deleted_fraction:
        logger.warning(
            "gen_sf_config deleted_fraction=%.4f above %.4f (N=%d gamma=%.3g m=%d)",
            report.deleted_fraction,
            warn_deleted_fraction,
            num_nodes,
            gamma,
            m,
        )
    g = Graph(
        num_nodes,
        np.array(edges, dtype=np.int64).reshape(-1, 2),
        info={"model": "sf", "gamma": gamma, "m": m, "seed": seed, "config_model": report.to_dict()},
    )
    logger.debug("gen_sf_config N=%d edges=%d report=%s", num_nodes, g.num_edges, report.to_dict())
    return g
