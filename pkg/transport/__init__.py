"""Transport on a (Graph, TerminalSet) instance.

- max flow and its decomposition by path length (maxflow)
- electrical current through unit resistors (current)
- random-walk escape probability (random_walk)
- multi-commodity flow: LP, multiplicative weights, integral oracle (mcflow)

The public solvers are exported wrapped with ``wrap_solver`` so each call
emits a SolverCallEvent.
"""

from tools.observability import wrap_solver
from transport import current as _current
from transport import maxflow as _maxflow
from transport import mcflow as _mcflow
from transport import random_walk as _random_walk
from transport.current import current_single_pair_law, node_potentials
from transport.maxflow import brute_force_min_cut
from transport.mcflow import MCFLOW_METHODS, McFlowMethod
from transport.models import DecompositionPolicy, TransportResult

max_flow = wrap_solver("max_flow", _maxflow.max_flow)
flow_decompose_by_length = wrap_solver("flow_decompose_by_length", _maxflow.flow_decompose_by_length)
electrical_current = wrap_solver("electrical_current", _current.electrical_current)
random_walk_escape = wrap_solver("random_walk_escape", _random_walk.random_walk_escape)
random_walk_escape_stats = wrap_solver("random_walk_escape_stats", _random_walk.random_walk_escape_stats)
mc_flow_fractional = wrap_solver("mc_flow_fractional", _mcflow.mc_flow_fractional)
mc_flow_integral_exact = wrap_solver("mc_flow_integral_exact", _mcflow.mc_flow_integral_exact)
mc_flow = wrap_solver("mc_flow", _mcflow.mc_flow)

__all__ = [
    "TransportResult",
    "DecompositionPolicy",
    "McFlowMethod",
    "MCFLOW_METHODS",
    "max_flow",
    "flow_decompose_by_length",
    "brute_force_min_cut",
    "electrical_current",
    "current_single_pair_law",
    "node_potentials",
    "random_walk_escape",
    "random_walk_escape_stats",
    "mc_flow_fractional",
    "mc_flow_integral_exact",
    "mc_flow",
]
