"""Unit-capacity max flow between a source set and a sink set.

Sources are merged into a super-source and sinks into a super-sink (the
infinite-capacity attachment arcs). Each undirected edge becomes two
opposing unit arcs whose flows cancel, so an edge carries at most one unit
in one direction. Augmentation follows Dinic's breadth-first layering:
every augmenting path is a shortest one, path lengths never decrease, and
the hop length of each path between real terminals is recorded.
"""

from __future__ import annotations

import logging
from collections import deque

import numpy as np

from netgen.models import Graph, TerminalSet
from tools.errors import ParameterError
from transport.models import TransportResult

logger = logging.getLogger(__name__)

POLICY = "shortest-augmenting-path"
BRUTE_FORCE_MAX_NODES = 20


class _Residual:
    """Residual network of the terminal-merged graph (lists for fast scalar access)."""

    def __init__(self, g: Graph, t: TerminalSet) -> None:
        n = g.num_nodes
        self.source = n
        self.sink = n + 1
        self.num_vertices = n + 2
        node_map = np.arange(n, dtype=np.int64)
        node_map[t.sources] = self.source
        node_map[t.sinks] = self.sink
        u = node_map[g.edges[:, 0]]
        v = node_map[g.edges[:, 1]]
        keep = u != v
        u, v = u[keep], v[keep]
        tails = np.empty(2 * u.size, dtype=np.int64)
        heads = np.empty(2 * u.size, dtype=np.int64)
        tails[0::2], heads[0::2] = u, v
        tails[1::2], heads[1::2] = v, u
        self.head: list[int] = heads.tolist()
        self.cap: list[int] = [1] * heads.size
        adj: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for a, x in enumerate(tails.tolist()):
            adj[x].append(a)
        self.adj = adj

    def bfs_levels(self) -> list[int]:
        level = [-1] * self.num_vertices
        level[self.source] = 0
        queue = deque([self.source])
        head, cap, adj = self.head, self.cap, self.adj
        while queue:
            x = queue.popleft()
            nxt = level[x] + 1
            for a in adj[x]:
                if cap[a] > 0:
                    y = head[a]
                    if level[y] < 0:
                        level[y] = nxt
                        queue.append(y)
        return level

    def blocking_flow(self, level: list[int]) -> int:
        """Push unit paths along the level graph until it is blocked."""
        head, cap, adj = self.head, self.cap, self.adj
        src, dst = self.source, self.sink
        ptr = [0] * self.num_vertices
        stack: list[int] = []
        pushed = 0
        x = src
        while True:
            if x == dst:
                for a in stack:
                    cap[a] -= 1
                    cap[a ^ 1] += 1
                pushed += 1
                stack.clear()
                x = src
                continue
            arcs = adj[x]
            i = ptr[x]
            want = level[x] + 1
            while i < len(arcs):
                a = arcs[i]
                if cap[a] > 0 and level[head[a]] == want:
                    break
                i += 1
            ptr[x] = i
            if i < len(arcs):
                a = arcs[i]
                stack.append(a)
                x = head[a]
                continue
            if x == src:
                return pushed
            level[x] = -1
            a = stack.pop()
            x = head[a ^ 1]
            ptr[x] += 1


def _solve(g: Graph, t: TerminalSet) -> tuple[int, dict[int, int], int]:
    t.require_mode("disjoint-sets")
    t.check_graph(g)
    net = _Residual(g, t)
    value = 0
    per_length: dict[int, int] = {}
    phases = 0
    while True:
        level = net.bfs_levels()
        length = level[net.sink]
        if length < 0:
            break
        pushed = net.blocking_flow(level)
        if pushed == 0:
            break
        phases += 1
        per_length[length] = per_length.get(length, 0) + pushed
        value += pushed
    logger.debug("max_flow N=%d n=%d value=%d phases=%d", g.num_nodes, t.n, value, phases)
    return value, per_length, phases


def max_flow(g: Graph, t: TerminalSet) -> TransportResult:
    """Maximum number of edge-disjoint source-set to sink-set paths."""
    value, _, phases = _solve(g, t)
    return TransportResult(value=value, method="dinic", iterations=phases, diagnostics={"phases": phases})


def flow_decompose_by_length(g: Graph, t: TerminalSet) -> TransportResult:
    """Max flow with the augmenting-path hop lengths recorded as F_l."""
    value, per_length, phases = _solve(g, t)
    return TransportResult(
        value=value,
        method="dinic",
        per_length_flow=dict(sorted(per_length.items())),
        decomposition_policy=POLICY,
        iterations=phases,
        diagnostics={"phases": phases},
    )


def brute_force_min_cut(g: Graph, t: TerminalSet) -> int:
    """Exhaustive min cut over every side assignment of the non-terminal nodes (N <= 20)."""
    t.require_mode("disjoint-sets")
    if g.num_nodes > BRUTE_FORCE_MAX_NODES:
        raise ParameterError(
            "too many nodes for exhaustive min cut", {"num_nodes": g.num_nodes, "max_nodes": BRUTE_FORCE_MAX_NODES}
        )
    is_terminal = np.zeros(g.num_nodes, dtype=bool)
    is_terminal[t.sources] = True
    is_terminal[t.sinks] = True
    free = np.flatnonzero(~is_terminal)
    masks = np.arange(1 << free.size, dtype=np.int64)
    side = np.zeros((masks.size, g.num_nodes), dtype=bool)
    side[:, t.sources] = True
    if free.size:
        side[:, free] = (masks[:, None] >> np.arange(free.size)) & 1 == 1
    if g.num_edges == 0:
        return 0
    crossing = side[:, g.edges[:, 0]] != side[:, g.edges[:, 1]]
    return int(crossing.sum(axis=1).min())
