"""Pytest fixtures for netflux tests.

Shared fixtures: small hand-built graphs, the bundled edge-list fixtures,
a seeded ER graph and a clean Settings cache.
"""

from __future__ import annotations

from pathlib import Path

import pytest

from cli.config import get_settings
from netgen import Graph, TerminalSet, gen_er

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "data" / "fixtures"


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch: pytest.MonkeyPatch):
    """Settings read fresh per test, without NETFLUX_* leaking in from the shell."""
    import os

    for key in list(os.environ):
        if key.startswith("NETFLUX_"):
            monkeypatch.delenv(key, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES_DIR


@pytest.fixture
def path3_file() -> Path:
    """Edge list of the path 0 - 1 - 2."""
    return FIXTURES_DIR / "path3.txt"


@pytest.fixture
def path3() -> Graph:
    """0 - 1 - 2."""
    return Graph.from_pairs(3, [(0, 1), (1, 2)])


@pytest.fixture
def single_edge() -> Graph:
    return Graph.from_pairs(2, [(0, 1)])


@pytest.fixture
def two_triangles() -> Graph:
    """Triangles {0,1,2} and {3,4,5} joined by the bridge 2-3."""
    return Graph.from_pairs(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)])


@pytest.fixture
def complete4() -> Graph:
    return Graph.from_pairs(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.fixture
def er_graph() -> Graph:
    """ER graph, N=200, <k>=4, seed 1."""
    return gen_er(200, 4.0, seed=1)


@pytest.fixture
def single_pair() -> TerminalSet:
    return TerminalSet.disjoint([0], [1])
