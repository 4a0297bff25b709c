"""Shared plumbing used by every netflux package.

- errors: NetfluxError hierarchy (ParameterError, ConvergenceError, ...)
- seeding: Philox streams keyed by (seed, keys) - make_rng, derive_seed
- observability: wrap_solver, emit_solver_event, register_solver_event_callback, SolverCallEvent
- defaults: setting / resolve (Settings-backed keyword defaults)
"""

from tools.defaults import resolve, setting
from tools.errors import (
    ConvergenceError,
    EdgeListError,
    FitError,
    GenerationError,
    InstanceSizeError,
    NetfluxError,
    ParameterError,
    SweepError,
)
from tools.observability import (
    SolverCallEvent,
    emit_solver_event,
    register_solver_event_callback,
    unregister_solver_event_callback,
    wrap_solver,
)
from tools.seeding import derive_seed, derive_seed_sequence, make_rng

__all__ = [
    "NetfluxError",
    "ParameterError",
    "GenerationError",
    "EdgeListError",
    "ConvergenceError",
    "InstanceSizeError",
    "FitError",
    "SweepError",
    "SolverCallEvent",
    "emit_solver_event",
    "register_solver_event_callback",
    "unregister_solver_event_callback",
    "wrap_solver",
    "make_rng",
    "derive_seed",
    "derive_seed_sequence",
    "setting",
    "resolve",
]
