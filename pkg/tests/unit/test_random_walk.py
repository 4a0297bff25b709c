"""Unit tests for the random-walk escape estimate."""

from __future__ import annotations

import numpy as np
import pytest

from netgen import Graph, TerminalSet, gen_er, sample_terminals
from tools.errors import ParameterError
from transport import electrical_current, random_walk_escape, random_walk_escape_stats


def test_single_edge_always_escapes(single_edge: Graph, single_pair: TerminalSet) -> None:
    assert random_walk_escape(single_edge, single_pair, 500, seed=0) == 1.0


def test_path_escapes_half_the_time(path3: Graph) -> None:
    estimate, stderr, truncated = random_walk_escape_stats(path3, TerminalSet.disjoint([0], [2]), 20_000, seed=1)
    assert truncated == 0
    assert stderr == pytest.approx(np.sqrt(0.25 / 20_000), rel=0.05)
    assert abs(estimate - 0.5) <= 4 * stderr


@pytest.mark.parametrize("seed", range(20))
def test_escape_matches_current_over_source_degree(seed: int) -> None:
    size = 5 + seed % 6
    g = gen_er(size, min(2.0 + (seed % 3) * 0.5, size - 2.0), seed=seed)
    t = sample_terminals(g, 1 + seed % 2, "disjoint-sets", seed=seed)
    z1 = int(g.degree[t.sources].sum())
    expected = electrical_current(g, t).value / z1 if z1 else 0.0
    walkers = 40_000
    estimate, _, truncated = random_walk_escape_stats(g, t, walkers, seed=seed)
    assert truncated == 0
    sigma = np.sqrt(expected * (1.0 - expected) / walkers)
    assert abs(estimate - expected) <= 3 * sigma + 1e-12


def test_isolated_sources_never_escape() -> None:
    g = Graph.from_pairs(3, [(1, 2)])
    assert random_walk_escape_stats(g, TerminalSet.disjoint([0], [2]), 100, seed=0) == (0.0, 0.0, 0)


def test_same_seed_same_estimate(er_graph: Graph) -> None:
    t = sample_terminals(er_graph, 4, "disjoint-sets", seed=0)
    assert random_walk_escape(er_graph, t, 2000, seed=3) == random_walk_escape(er_graph, t, 2000, seed=3)


def test_step_cap_counts_failures(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("NETFLUX_WALK_MAX_STEPS", "1")
    g = Graph.from_pairs(4, [(0, 1), (1, 2), (2, 3)])
    estimate, _, truncated = random_walk_escape_stats(g, TerminalSet.disjoint([0], [3]), 100, seed=0)
    assert estimate == 0.0
    assert truncated == 100


def test_rejects_zero_walkers(path3: Graph) -> None:
    with pytest.raises(ParameterError):
        random_walk_escape(path3, TerminalSet.disjoint([0], [2]), 0, seed=0)
