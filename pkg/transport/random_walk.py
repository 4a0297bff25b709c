"""Monte-Carlo escape probability of random walkers from the source set."""

from __future__ import annotations

import logging

import numpy as np

from netgen.models import Graph, TerminalSet
from tools.defaults import resolve
from tools.errors import ParameterError
from tools.seeding import STREAM_WALK, make_rng

logger = logging.getLogger(__name__)

DEFAULT_MAX_STEPS = 1_000_000


def random_walk_escape_stats(
    g: Graph,
    t: TerminalSet,
    walkers: int,
    seed: int,
    *,
    max_steps: int | None = None,
) -> tuple[float, float, int]:
    """(escape fraction, binomial standard error, walkers cut off by max_steps).

    Walkers start on a source picked with probability proportional to its
    degree and move to a uniform neighbour each step. Reaching a sink is an
    escape, re-entering any source a failure; walkers still moving after
    ``max_steps`` count as failures.
    """
    t.require_mode("disjoint-sets")
    t.check_graph(g)
    if walkers < 1:
        raise ParameterError("walkers must be >= 1", {"walkers": walkers})
    max_steps = int(resolve(max_steps, "walk_max_steps", DEFAULT_MAX_STEPS))

    degree = g.degree
    source_degree = degree[t.sources].astype(np.float64)
    total = source_degree.sum()
    if total == 0:
        return 0.0, 0.0, 0

    rng = make_rng(seed, STREAM_WALK)
    is_source = np.zeros(g.num_nodes, dtype=bool)
    is_source[t.sources] = True
    is_sink = np.zeros(g.num_nodes, dtype=bool)
    is_sink[t.sinks] = True
    indptr, indices = g.indptr, g.indices

    pos = rng.choice(t.sources, size=walkers, p=source_degree / total)
    escaped = np.zeros(walkers, dtype=bool)
    active = np.arange(walkers)
    steps = 0
    while active.size and steps < max_steps:
        here = pos[active]
        offset = np.floor(rng.random(active.size) * degree[here]).astype(np.int64)
        there = indices[indptr[here] + offset]
        pos[active] = there
        hit_sink = is_sink[there]
        escaped[active[hit_sink]] = True
        active = active[~(hit_sink | is_source[there])]
        steps += 1

    estimate = float(escaped.mean())
    stderr = float(np.sqrt(estimate * (1.0 - estimate) / walkers))
    truncated = int(active.size)
    if truncated:
        logger.warning("random_walk_escape truncated=%d max_steps=%d", truncated, max_steps)
    logger.debug("random_walk_escape walkers=%d estimate=%.6f steps=%d", walkers, estimate, steps)
    return estimate, stderr, truncated


def random_walk_escape(g: Graph, t: TerminalSet, walkers: int, seed: int) -> float:
    """Fraction of walkers that reach a sink before returning to a source."""
    return random_walk_escape_stats(g, t, walkers, seed)[0]
