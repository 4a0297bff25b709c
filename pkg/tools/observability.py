"""Observable logging for solver calls: input, execution, result.

Structured events (solver name, summarized arguments, result, timings) are
logged and pushed to registered callbacks; the CLI ``--trace`` flag uses
this to stream one JSON line per solver call.
"""

from __future__ import annotations

import functools
import logging
import time
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from typing import Any, Callable, TypeVar

logger = logging.getLogger(__name__)

F = TypeVar("F", bound=Callable[..., Any])

# Callbacks registered for streaming (e.g. CLI trace output)
_solver_event_callbacks: list[Callable[[dict[str, Any]], None]] = []


@dataclass
class SolverCallEvent:
    """Structured event for a single solver call."""

    solver_name: str
    input: dict[str, Any]
    started_at: str
    finished_at: str
    duration_ms: float
    result: Any = None
    error: str | None = None

    def to_dict(self) -> dict[str, Any]:
        """JSON-serializable dict for streaming."""
        d = asdict(self)
        d["result"] = _safe_value(d.get("result"))
        return d


def emit_solver_event(event: SolverCallEvent) -> None:
    """Log and broadcast the solver call event to registered callbacks."""
    payload = event.to_dict()
    logger.debug(
        "solver_call solver_name=%s duration_ms=%.2f error=%s",
        event.solver_name,
        event.duration_ms,
        event.error,
        extra={"solver_event": payload},
    )
    for cb in _solver_event_callbacks:
        try:
            cb(payload)
        except Exception as e:
            logger.warning("Solver event callback failed: %s", e)


def register_solver_event_callback(callback: Callable[[dict[str, Any]], None]) -> None:
    """Register a callback to receive solver call events."""
    _solver_event_callbacks.append(callback)


def unregister_solver_event_callback(callback: Callable[[dict[str, Any]], None]) -> None:
    """Remove a previously registered callback."""
    if callback in _solver_event_callbacks:
        _solver_event_callbacks.remove(callback)


def wrap_solver(solver_name: str, fn: F) -> F:
    """Wrap a solver so that each call emits a SolverCallEvent."""

    @functools.wraps(fn)
    def observed(*args: Any, **kwargs: Any) -> Any:
        started_at = datetime.now(timezone.utc).isoformat()
        t0 = time.perf_counter()
        input_payload: dict[str, Any] = {f"arg_{i}": _safe_value(a) for i, a in enumerate(args)}
        input_payload.update({k: _safe_value(v) for k, v in kwargs.items()})

        result: Any = None
        error: str | None = None
        try:
            result = fn(*args, **kwargs)
            return result
        except Exception as e:
            error = f"{type(e).__name__}: {e}"
            raise
        finally:
            duration_ms = (time.perf_counter() - t0) * 1000
            emit_solver_event(
                SolverCallEvent(
                    solver_name=solver_name,
                    input=input_payload,
                    started_at=started_at,
                    finished_at=datetime.now(timezone.utc).isoformat(),
                    duration_ms=round(duration_ms, 2),
                    result=_safe_value(result),
                    error=error,
                )
            )

    return observed  # type: ignore[return-value]


def _safe_value(x: Any) -> Any:
    """Return a JSON-serializable summary (domain objects via their ``summary()``)."""
    if x is None:
        return None
    summary = getattr(x, "summary", None)
    if callable(summary):
        try:
            return summary()
        except Exception:
            return str(type(x).__name__)
    if isinstance(x, (bool, int, float)):
        return x
    if isinstance(x, str):
        return x[:2000] + "..." if len(x) > 2000 else x
    if isinstance(x, (list, tuple)):
        seq = list(x)
        if len(seq) > 50:
            return [_safe_value(v) for v in seq[:50]] + [f"... {len(seq) - 50} more"]
        return [_safe_value(v) for v in seq]
    if isinstance(x, dict):
        return {str(k): _safe_value(v) for k, v in list(x.items())[:50]}
    try:
        return str(x)[:500]
    except Exception:
        return "<unserializable>"
