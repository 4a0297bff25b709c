"""Exception hierarchy shared by every netflux package.

Each error carries a ``details`` dict so callers (CLI, sweeps) can log
diagnostics without parsing messages.
"""

from __future__ import annotations

from typing import Any


class NetfluxError(Exception):
    """Base class for all netflux errors."""

    def __init__(self, message: str, details: dict[str, Any] | None = None) -> None:
        super().__init__(message)
        self.details: dict[str, Any] = dict(details or {})

    def to_dict(self) -> dict[str, Any]:
        return {"error": type(self).__name__, "message": str(self), "details": self.details}


class ParameterError(NetfluxError, ValueError):
    """Invalid parameters, modes or ranges."""


class GenerationError(NetfluxError):
    """Configuration-model generation failed (non-graphical or too many deletions)."""


class EdgeListError(NetfluxError):
    """Edge-list file could not be parsed."""

    def __init__(self, message: str, path: str, line_number: int | None = None) -> None:
        super().__init__(message, {"path": path, "line_number": line_number})
        self.path = path
        self.line_number = line_number


class ConvergenceError(NetfluxError):
    """Iterative solver did not reach its tolerance."""

    def __init__(self, message: str, residual: float, iterations: int) -> None:
        super().__init__(message, {"residual": residual, "iterations": iterations})
        self.residual = residual
        self.iterations = iterations


class InstanceSizeError(ParameterError):
    """Instance exceeds the size cap or search budget of an exact solver."""


class FitError(NetfluxError):
    """Least-squares fit is degenerate."""


class SweepError(NetfluxError):
    """Sweep failed as a whole (too many failures, mismatched grids)."""
