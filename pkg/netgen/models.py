"""Graph and terminal-set records.

Both are immutable after construction: arrays are stored read-only and the
dataclasses are frozen, so one Graph can be shared by concurrent workers.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from functools import cached_property
from typing import Any, Iterable, Literal, Mapping

import numpy as np
import scipy.sparse

from tools.errors import ParameterError

TerminalMode = Literal["disjoint-sets", "ordered-pairs"]
TERMINAL_MODES: tuple[str, ...] = ("disjoint-sets", "ordered-pairs")


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on nodes 0..N-1.

    ``edges`` is an (E, 2) int array with u < v on every row, sorted
    lexicographically. ``info`` carries provenance (model, seed, load report).
    """

    num_nodes: int
    edges: np.ndarray
    info: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        n = int(self.num_nodes)
        if n < 1:
            raise ParameterError("graph needs at least one node", {"num_nodes": n})
        e = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        if e.size:
            if e.min() < 0 or e.max() >= n:
                raise ParameterError("edge endpoint out of range", {"num_nodes": n})
            e = np.sort(e, axis=1)
            if np.any(e[:, 0] == e[:, 1]):
                raise ParameterError("self-loop in edge list")
            e = e[np.lexsort((e[:, 1], e[:, 0]))]
            if np.any(np.all(e[1:] == e[:-1], axis=1)):
                raise ParameterError("duplicate edge in edge list")
        object.__setattr__(self, "num_nodes", n)
        object.__setattr__(self, "edges", _readonly(np.ascontiguousarray(e)))
        object.__setattr__(self, "info", dict(self.info))

    @classmethod
    def from_pairs(
        cls, num_nodes: int, pairs: Iterable[tuple[int, int]], info: Mapping[str, Any] | None = None
    ) -> Graph:
        """Build from an iterable of (u, v) pairs."""
        arr = np.array(list(pairs), dtype=np.int64).reshape(-1, 2)
        return cls(num_nodes=num_nodes, edges=arr, info=info or {})

    @property
    def num_edges(self) -> int:
        return int(self.edges.shape[0])

    @cached_property
    def degree(self) -> np.ndarray:
        """Per-node degree (read-only)."""
        deg = np.bincount(self.edges.ravel(), minlength=self.num_nodes).astype(np.int64)
        return _readonly(deg)

    @property
    def mean_degree(self) -> float:
        return 2.0 * self.num_edges / self.num_nodes

    @property
    def p(self) -> float:
        """Edge probability of the ER graph with this mean degree."""
        if self.num_nodes < 2:
            return 0.0
        return self.mean_degree / (self.num_nodes - 1)

    @cached_property
    def _csr(self) -> tuple[np.ndarray, np.ndarray]:
        u, v = self.edges[:, 0], self.edges[:, 1]
        src = np.concatenate([u, v])
        dst = np.concatenate([v, u])
        order = np.lexsort((dst, src))
        indptr = np.zeros(self.num_nodes + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=self.num_nodes), out=indptr[1:])
        return _readonly(indptr), _readonly(dst[order])

    @property
    def indptr(self) -> np.ndarray:
        return self._csr[0]

    @property
    def indices(self) -> np.ndarray:
        return self._csr[1]

    def neighbors(self, v: int) -> np.ndarray:
        indptr, indices = self._csr
        return indices[indptr[v] : indptr[v + 1]]

    def adjacency(self) -> scipy.sparse.csr_matrix:
        """Symmetric 0/1 adjacency matrix."""
        indptr, indices = self._csr
        data = np.ones(indices.shape[0], dtype=np.float64)
        return scipy.sparse.csr_matrix((data, indices, indptr), shape=(self.num_nodes, self.num_nodes))

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(a), int(b)) for a, b in self.edges}

    def summary(self) -> dict[str, Any]:
        return {
            "num_nodes": self.num_nodes,
            "num_edges": self.num_edges,
            "mean_degree": round(self.mean_degree, 6),
            "model": self.info.get("model"),
        }


@dataclass(frozen=True, eq=False)
class TerminalSet:
    """Sources and sinks.

    disjoint-sets: two disjoint node sets of equal size n.
    ordered-pairs: n positional (source, sink) pairs; nodes may repeat across
    pairs but a pair's source differs from its own sink.
    """

    mode: TerminalMode
    sources: np.ndarray
    sinks: np.ndarray

    def __post_init__(self) -> None:
        if self.mode not in TERMINAL_MODES:
            raise ParameterError(f"unknown terminal mode {self.mode!r}", {"modes": TERMINAL_MODES})
        s = np.asarray(self.sources, dtype=np.int64).ravel()
        t = np.asarray(self.sinks, dtype=np.int64).ravel()
        if s.shape != t.shape or s.size == 0:
            raise ParameterError(
                "sources and sinks must be non-empty and of equal size",
                {"sources": int(s.size), "sinks": int(t.size)},
            )
        if self.mode == "disjoint-sets":
            if np.unique(s).size != s.size or np.unique(t).size != t.size:
                raise ParameterError("disjoint-sets terminals must not repeat nodes")
            if np.intersect1d(s, t).size:
                raise ParameterError("sources and sinks overlap in disjoint-sets mode")
        elif np.any(s == t):
            raise ParameterError("a pair's source equals its own sink")
        object.__setattr__(self, "sources", _readonly(s.copy()))
        object.__setattr__(self, "sinks", _readonly(t.copy()))

    @classmethod
    def disjoint(cls, sources: Iterable[int], sinks: Iterable[int]) -> TerminalSet:
        return cls("disjoint-sets", np.fromiter(sources, dtype=np.int64), np.fromiter(sinks, dtype=np.int64))

    @classmethod
    def pairs(cls, pairs: Iterable[tuple[int, int]]) -> TerminalSet:
        arr = np.array(list(pairs), dtype=np.int64).reshape(-1, 2)
        return cls("ordered-pairs", arr[:, 0], arr[:, 1])

    @property
    def n(self) -> int:
        return int(self.sources.size)

    def check_graph(self, g: Graph) -> None:
        """Raise ParameterError if terminals do not fit ``g``."""
        hi = max(int(self.sources.max()), int(self.sinks.max()))
        lo = min(int(self.sources.min()), int(self.sinks.min()))
        if lo < 0 or hi >= g.num_nodes:
            raise ParameterError("terminal node out of range", {"num_nodes": g.num_nodes})

    def require_mode(self, mode: TerminalMode) -> None:
        if self.mode != mode:
            raise ParameterError(f"operation requires {mode} terminals, got {self.mode}")

    def summary(self) -> dict[str, Any]:
        return {"mode": self.mode, "n": self.n}


@dataclass
class ConfigModelReport:
    """Diagnostics of one configuration-model draw."""

    total_stubs: int
    rewire_attempts: int
    deleted_stubs: int
    parity_redraws: int
    graphical_redraws: int = 0

    @property
    def deleted_fraction(self) -> float:
        return self.deleted_stubs / self.total_stubs if self.total_stubs else 0.0

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["deleted_fraction"] = self.deleted_fraction
        return d
