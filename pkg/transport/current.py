"""Electrical current with sources at unit potential and sinks grounded.

Every edge is a unit resistor. Potentials of free nodes follow from the
graph Laplacian restricted to them; free nodes in components that hold no
terminal float and carry no current, so they are left out of the solve.
"""

from __future__ import annotations

import logging

import numpy as np
import scipy.sparse
import scipy.sparse.csgraph
import scipy.sparse.linalg

from netgen.models import Graph, TerminalSet
from tools.defaults import resolve
from tools.errors import ConvergenceError, ParameterError
from transport.models import TransportResult

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10
DEFAULT_MAXITER_FACTOR = 50


def current_single_pair_law(k1: float, k2: float, c: float = 1.0) -> float:
    """c * k1 * k2 / (k1 + k2); zero when both degrees are zero."""
    total = k1 + k2
    if total <= 0:
        return 0.0
    return c * k1 * k2 / total


def _free_nodes(g: Graph, t: TerminalSet) -> np.ndarray:
    is_terminal = np.zeros(g.num_nodes, dtype=bool)
    is_terminal[t.sources] = True
    is_terminal[t.sinks] = True
    _, labels = scipy.sparse.csgraph.connected_components(g.adjacency(), directed=False)
    live = np.zeros(labels.max() + 1, dtype=bool)
    live[labels[is_terminal]] = True
    return np.flatnonzero(~is_terminal & live[labels])


def _cg(matrix, rhs, x0, tol, maxiter):
    iterations = 0

    def count(_xk):
        nonlocal iterations
        iterations += 1

    diag = matrix.diagonal()
    precond = scipy.sparse.linalg.LinearOperator(matrix.shape, matvec=lambda v: v / diag, dtype=np.float64)
    x, info = scipy.sparse.linalg.cg(
        matrix, rhs, x0=x0, rtol=tol, atol=0.0, maxiter=maxiter, M=precond, callback=count
    )
    return x, info, iterations


def _solve_potentials(
    g: Graph, t: TerminalSet, tol: float, factor: int
) -> tuple[np.ndarray, float, int, int]:
    """(potential per node, relative residual, CG iterations, free node count)."""
    potential = np.zeros(g.num_nodes, dtype=np.float64)
    potential[t.sources] = 1.0
    free = _free_nodes(g, t)
    if free.size == 0:
        return potential, 0.0, 0, 0
    adj_free = g.adjacency()[free]
    rhs = np.asarray(adj_free[:, t.sources].sum(axis=1)).ravel()
    rhs_norm = float(np.linalg.norm(rhs))
    if rhs_norm == 0:
        return potential, 0.0, 0, int(free.size)
    lap = (scipy.sparse.diags(g.degree[free].astype(np.float64)) - adj_free[:, free]).tocsr()
    maxiter = factor * g.num_nodes
    x, info, iterations = _cg(lap, rhs, None, tol, maxiter)
    residual = float(np.linalg.norm(rhs - lap @ x)) / rhs_norm
    if info == 0 and residual > tol:
        # recurrence drift: restart once from the iterate
        x, info, extra = _cg(lap, rhs, x, tol, maxiter)
        iterations += extra
        residual = float(np.linalg.norm(rhs - lap @ x)) / rhs_norm
    if info != 0 or residual > tol:
        raise ConvergenceError(
            f"conjugate gradient stopped at residual {residual:.3e} > tol {tol:.1e}",
            residual=residual,
            iterations=iterations,
        )
    potential[free] = x
    return potential, residual, iterations, int(free.size)


def node_potentials(g: Graph, t: TerminalSet, tol: float | None = None) -> np.ndarray:
    """Potential of every node; floating components sit at 0."""
    t.require_mode("disjoint-sets")
    t.check_graph(g)
    tol = float(resolve(tol, "current_tol", DEFAULT_TOL))
    factor = int(resolve(None, "current_maxiter_factor", DEFAULT_MAXITER_FACTOR))
    return _solve_potentials(g, t, tol, factor)[0]


def electrical_current(
    g: Graph,
    t: TerminalSet,
    tol: float | None = None,
    *,
    maxiter_factor: int | None = None,
) -> TransportResult:
    """Total current entering the sink set.

    Raises ConvergenceError when the relative residual of the reduced
    Laplacian system stays above ``tol`` within ``maxiter_factor * N``
    conjugate-gradient iterations.
    """
    t.require_mode("disjoint-sets")
    t.check_graph(g)
    tol = float(resolve(tol, "current_tol", DEFAULT_TOL))
    if not tol > 0:
        raise ParameterError("tol must be positive", {"tol": tol})
    factor = int(resolve(maxiter_factor, "current_maxiter_factor", DEFAULT_MAXITER_FACTOR))

    potential, residual, iterations, free = _solve_potentials(g, t, tol, factor)
    adj = g.adjacency()
    sink_current = float((adj[t.sinks] @ potential).sum())
    source_current = float((adj[t.sources] @ (1.0 - potential)).sum())
    logger.debug(
        "electrical_current N=%d n=%d free=%d value=%.6g residual=%.2e iterations=%d",
        g.num_nodes,
        t.n,
        free,
        sink_current,
        residual,
        iterations,
    )
    return TransportResult(
        value=sink_current,
        method="conjugate-gradient",
        residual=residual,
        iterations=iterations,
        diagnostics={
            "source_current": source_current,
            "sink_current": sink_current,
            "free_nodes": free,
            "tol": tol,
        },
    )
