"""Terminal sampling and degree sums."""

from __future__ import annotations

import logging
from typing import Iterable

import numpy as np

from netgen.models import TERMINAL_MODES, Graph, TerminalMode, TerminalSet
from tools.errors import ParameterError
from tools.seeding import STREAM_TERMINALS, make_rng

logger = logging.getLogger(__name__)


def sample_terminals(g: Graph, n: int, mode: TerminalMode, seed: int) -> TerminalSet:
    """Uniformly sample n sources and n sinks.

    disjoint-sets: 2n distinct nodes without replacement, first half sources.
    ordered-pairs: n independent pairs of distinct nodes.
    """
    if mode not in TERMINAL_MODES:
        raise ParameterError(f"unknown terminal mode {mode!r}", {"modes": TERMINAL_MODES})
    num_nodes = g.num_nodes
    rng = make_rng(seed, STREAM_TERMINALS)
    if mode == "disjoint-sets":
        if n < 1 or 2 * n > num_nodes:
            raise ParameterError("disjoint-sets needs 1 <= n <= N/2", {"n": n, "num_nodes": num_nodes})
        chosen = rng.permutation(num_nodes)[: 2 * n]
        return TerminalSet("disjoint-sets", chosen[:n], chosen[n:])
    if n < 1 or n > num_nodes or num_nodes < 2:
        raise ParameterError("ordered-pairs needs 1 <= n <= N", {"n": n, "num_nodes": num_nodes})
    sources = rng.integers(num_nodes, size=n)
    sinks = rng.integers(num_nodes - 1, size=n)
    sinks = sinks + (sinks >= sources)
    return TerminalSet("ordered-pairs", sources, sinks)


def degree_sum(g: Graph, nodes: Iterable[int]) -> int:
    """z = sum of degrees of ``nodes``."""
    idx = np.fromiter(nodes, dtype=np.int64)
    if idx.size == 0:
        return 0
    return int(g.degree[idx].sum())
