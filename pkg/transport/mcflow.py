"""Maximum multi-commodity flow between ordered (source, sink) pairs.

Each undirected edge is two opposing directed arcs of unit capacity shared
by all commodities; the objective is the total delivered flow.

- ``mc_flow_fractional``: exact LP in arc-flow variables (HiGHS) up to
  ``mcflow_lp_max_nodes`` nodes, multiplicative-weights path routing above.
- ``mc_flow_integral_exact``: exhaustive search over arc-disjoint path
  systems for tiny instances.
- ``mc_flow``: dispatcher choosing one of the above.
"""

from __future__ import annotations

import logging
import math
from typing import Literal

import numpy as np
import scipy.optimize
import scipy.sparse
import scipy.sparse.csgraph

from netgen.models import Graph, TerminalSet
from tools.defaults import resolve
from tools.errors import ConvergenceError, InstanceSizeError, ParameterError
from transport.models import TransportResult

logger = logging.getLogger(__name__)

McFlowMethod = Literal["auto", "fractional", "lp", "garg-konemann", "integral-exact"]
MCFLOW_METHODS: tuple[str, ...] = ("auto", "fractional", "lp", "garg-konemann", "integral-exact")

DEFAULT_LP_MAX_NODES = 256
DEFAULT_EPSILON = 0.1
DEFAULT_EXACT_MAX_NODES = 12
DEFAULT_EXACT_MAX_PAIRS = 4
DEFAULT_EXACT_BUDGET = 2_000_000


def _arcs(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """(tails, heads); arc 2i is edge i forward, 2i+1 backward."""
    tails = np.empty(2 * g.num_edges, dtype=np.int64)
    heads = np.empty(2 * g.num_edges, dtype=np.int64)
    tails[0::2], heads[0::2] = g.edges[:, 0], g.edges[:, 1]
    tails[1::2], heads[1::2] = g.edges[:, 1], g.edges[:, 0]
    return tails, heads


def _check_pairs(g: Graph, t: TerminalSet) -> None:
    t.require_mode("ordered-pairs")
    t.check_graph(g)


def _lp(g: Graph, t: TerminalSet) -> TransportResult:
    tails, heads = _arcs(g)
    num_arcs = tails.size
    num_nodes = g.num_nodes
    cols = np.arange(num_arcs)
    # incidence: +1 where the arc leaves a node, -1 where it enters
    incidence = scipy.sparse.csr_matrix(
        (
            np.concatenate([np.ones(num_arcs), -np.ones(num_arcs)]),
            (np.concatenate([tails, heads]), np.concatenate([cols, cols])),
        ),
        shape=(num_nodes, num_arcs),
    )
    eq_blocks = []
    objective = np.zeros(t.n * num_arcs)
    for k, (s, d) in enumerate(zip(t.sources.tolist(), t.sinks.tolist())):
        keep = np.ones(num_nodes, dtype=bool)
        keep[[s, d]] = False
        eq_blocks.append(incidence[keep])
        objective[k * num_arcs : (k + 1) * num_arcs] = -incidence[s].toarray().ravel()
    a_eq = scipy.sparse.block_diag(eq_blocks, format="csr")
    a_ub = scipy.sparse.hstack([scipy.sparse.identity(num_arcs, format="csr")] * t.n, format="csr")
    res = scipy.optimize.linprog(
        objective,
        A_ub=a_ub,
        b_ub=np.ones(num_arcs),
        A_eq=a_eq,
        b_eq=np.zeros(a_eq.shape[0]),
        bounds=(0.0, 1.0),
        method="highs",
    )
    if res.status != 0:
        raise ConvergenceError(f"linear program failed: {res.message}", residual=float("nan"), iterations=int(res.nit))
    value = max(0.0, float(-res.fun))
    per_pair = (-objective.reshape(t.n, num_arcs) * res.x.reshape(t.n, num_arcs)).sum(axis=1)
    return TransportResult(
        value=value,
        method="lp",
        iterations=int(res.nit),
        diagnostics={"status": res.message, "per_pair": [float(v) for v in per_pair]},
    )


def _garg_konemann(g: Graph, t: TerminalSet, epsilon: float) -> TransportResult:
    """Multiplicative-weights max multi-commodity flow, (1 - epsilon)^-3 approximate.

    Arc lengths start at delta and grow by (1 + epsilon) each time a unit
    is routed over them; phases raise the admissible path length until every
    commodity's shortest path reaches 1. Routed flow is scaled down to be
    feasible.
    """
    tails, heads = _arcs(g)
    num_arcs = tails.size
    order = np.lexsort((heads, tails))
    tails_s, heads_s = tails[order], heads[order]
    indptr = np.zeros(g.num_nodes + 1, dtype=np.int64)
    np.cumsum(np.bincount(tails_s, minlength=g.num_nodes), out=indptr[1:])
    delta = (1 + epsilon) / ((1 + epsilon) * num_arcs) ** (1 / epsilon)
    lengths = np.full(num_arcs, delta)
    load = np.zeros(num_arcs)
    scale = math.log((1 + epsilon) / delta, 1 + epsilon)

    def arc_position(u: int, v: int) -> int:
        lo, hi = indptr[u], indptr[u + 1]
        return int(lo + np.searchsorted(heads_s[lo:hi], v))

    active = list(zip(t.sources.tolist(), t.sinks.tolist()))
    routed = 0
    shortest_paths = 0
    alpha = delta
    while active and alpha < 1.0:
        alpha = min(1.0, alpha * (1 + epsilon))
        still = []
        for s, d in active:
            reachable = True
            while True:
                matrix = scipy.sparse.csr_matrix((lengths, heads_s, indptr), shape=(g.num_nodes, g.num_nodes))
                dist, pred = scipy.sparse.csgraph.dijkstra(matrix, directed=True, indices=s, return_predecessors=True)
                shortest_paths += 1
                if not np.isfinite(dist[d]):
                    reachable = False
                    break
                if dist[d] >= alpha:
                    break
                v = d
                while v != s:
                    u = int(pred[v])
                    a = arc_position(u, v)
                    load[a] += 1.0
                    lengths[a] *= 1 + epsilon
                    v = u
                routed += 1
            if reachable:
                still.append((s, d))
        active = still
    divisor = max(scale, float(load.max()) if load.size else 0.0, 1.0)
    value = routed / divisor
    logger.debug("garg_konemann routed=%d scale=%.3f value=%.4f paths=%d", routed, scale, value, shortest_paths)
    return TransportResult(
        value=value,
        method="garg-konemann",
        iterations=shortest_paths,
        diagnostics={"epsilon": epsilon, "routed_units": routed, "scale": divisor},
    )


def mc_flow_fractional(
    g: Graph,
    t: TerminalSet,
    *,
    lp_max_nodes: int | None = None,
    epsilon: float | None = None,
    method: Literal["auto", "lp", "garg-konemann"] = "auto",
) -> TransportResult:
    """Maximum fractional multi-commodity flow; ``method`` in the result names the solver."""
    _check_pairs(g, t)
    if g.num_edges == 0:
        return TransportResult(value=0.0, method="lp")
    lp_max_nodes = int(resolve(lp_max_nodes, "mcflow_lp_max_nodes", DEFAULT_LP_MAX_NODES))
    if method == "auto":
        method = "lp" if g.num_nodes <= lp_max_nodes else "garg-konemann"
    if method == "lp":
        result = _lp(g, t)
    elif method == "garg-konemann":
        eps = float(resolve(epsilon, "mcflow_epsilon", DEFAULT_EPSILON))
        if not 0 < eps < 1:
            raise ParameterError("epsilon must lie in (0, 1)", {"epsilon": eps})
        result = _garg_konemann(g, t, eps)
    else:
        raise ParameterError(f"unknown fractional method {method!r}")
    logger.debug("mc_flow_fractional N=%d n=%d method=%s value=%.6g", g.num_nodes, t.n, result.method, result.value)
    return result


class _PathSystemSearch:
    """Branch and bound over arc-disjoint path systems, one commodity at a time.

    For each commodity every subset of pairwise arc-disjoint simple paths is
    tried; the last commodity is closed by a single-commodity max flow.
    A branch is cut when the flow so far plus each remaining commodity's
    stand-alone max flow cannot beat the best system found.
    """

    def __init__(self, g: Graph, t: TerminalSet, budget: int) -> None:
        self.num_nodes = g.num_nodes
        self.tails, self.heads = _arcs(g)
        self.out_arcs: list[list[int]] = [[] for _ in range(g.num_nodes)]
        for a, u in enumerate(self.tails.tolist()):
            self.out_arcs[u].append(a)
        self.heads_list = self.heads.tolist()
        self.pairs = list(zip(t.sources.tolist(), t.sinks.tolist()))
        self.budget = budget
        self.steps = 0
        self.best = 0

    def _tick(self) -> None:
        self.steps += 1
        if self.steps > self.budget:
            raise InstanceSizeError("integral multi-commodity search exceeded its budget", {"budget": self.budget})

    def _single_max_flow(self, free: np.ndarray, s: int, d: int) -> int:
        idx = np.flatnonzero(free)
        if idx.size == 0:
            return 0
        cap = scipy.sparse.csr_matrix(
            (np.ones(idx.size, dtype=np.int32), (self.tails[idx], self.heads[idx])),
            shape=(self.num_nodes, self.num_nodes),
        )
        return int(scipy.sparse.csgraph.maximum_flow(cap, s, d).flow_value)

    def _simple_paths(self, free: np.ndarray, s: int, d: int) -> list[tuple[int, ...]]:
        paths: list[tuple[int, ...]] = []
        visited = [False] * self.num_nodes
        visited[s] = True
        stack: list[int] = []

        def walk(u: int) -> None:
            for a in self.out_arcs[u]:
                if not free[a]:
                    continue
                v = self.heads_list[a]
                if visited[v]:
                    continue
                self._tick()
                stack.append(a)
                if v == d:
                    paths.append(tuple(stack))
                else:
                    visited[v] = True
                    walk(v)
                    visited[v] = False
                stack.pop()

        walk(s)
        return paths

    def _bound(self, k: int, free: np.ndarray) -> int:
        return sum(self._single_max_flow(free, s, d) for s, d in self.pairs[k:])

    def solve(self) -> int:
        free = np.ones(self.tails.size, dtype=bool)
        self._commodity(0, free, 0)
        return self.best

    def _commodity(self, k: int, free: np.ndarray, current: int) -> None:
        self._tick()
        s, d = self.pairs[k]
        if k == len(self.pairs) - 1:
            self.best = max(self.best, current + self._single_max_flow(free, s, d))
            return
        if current + self._bound(k, free) <= self.best:
            return
        paths = self._simple_paths(free, s, d)

        def choose(i: int, chosen: int) -> None:
            for j in range(i, len(paths)):
                arcs = paths[j]
                if all(free[a] for a in arcs):
                    free[list(arcs)] = False
                    choose(j + 1, chosen + 1)
                    free[list(arcs)] = True
            self._commodity(k + 1, free, current + chosen)

        choose(0, 0)


def mc_flow_integral_exact(
    g: Graph,
    t: TerminalSet,
    *,
    max_nodes: int | None = None,
    max_pairs: int | None = None,
    budget: int | None = None,
) -> TransportResult:
    """Exact maximum integral multi-commodity flow on tiny instances.

    Raises InstanceSizeError above the node or pair cap, or when the search
    exceeds its step budget.
    """
    _check_pairs(g, t)
    max_nodes = int(resolve(max_nodes, "exact_mc_max_nodes", DEFAULT_EXACT_MAX_NODES))
    max_pairs = int(resolve(max_pairs, "exact_mc_max_pairs", DEFAULT_EXACT_MAX_PAIRS))
    budget = int(resolve(budget, "exact_mc_budget", DEFAULT_EXACT_BUDGET))
    if g.num_nodes > max_nodes or t.n > max_pairs:
        raise InstanceSizeError(
            "instance above the integral oracle's size cap",
            {"num_nodes": g.num_nodes, "n": t.n, "max_nodes": max_nodes, "max_pairs": max_pairs},
        )
    search = _PathSystemSearch(g, t, budget)
    value = search.solve() if g.num_edges else 0
    logger.debug("mc_flow_integral_exact N=%d n=%d value=%d steps=%d", g.num_nodes, t.n, value, search.steps)
    return TransportResult(
        value=float(value),
        method="integral-exact",
        iterations=search.steps,
        diagnostics={"search_steps": search.steps},
    )


def mc_flow(g: Graph, t: TerminalSet, method: McFlowMethod = "auto") -> TransportResult:
    """Dispatch to the integral oracle, the LP or the approximation.

    auto: integral-exact when the instance fits the oracle caps, otherwise
    fractional. fractional: the LP up to ``mcflow_lp_max_nodes`` nodes,
    multiplicative weights above. lp and garg-konemann force one solver.
    """
    if method not in MCFLOW_METHODS:
        raise ParameterError(f"unknown mcflow method {method!r}", {"methods": MCFLOW_METHODS})
    if method == "integral-exact":
        return mc_flow_integral_exact(g, t)
    if method == "auto":
        max_nodes = int(resolve(None, "exact_mc_max_nodes", DEFAULT_EXACT_MAX_NODES))
        max_pairs = int(resolve(None, "exact_mc_max_pairs", DEFAULT_EXACT_MAX_PAIRS))
        if g.num_nodes <= max_nodes and t.n <= max_pairs:
            _check_pairs(g, t)
            try:
                return mc_flow_integral_exact(g, t)
            except InstanceSizeError as e:
                logger.info("integral oracle gave up, falling back to fractional: %s", e)
        return mc_flow_fractional(g, t)
    if method == "fractional":
        return mc_flow_fractional(g, t)
    return mc_flow_fractional(g, t, method=method)
