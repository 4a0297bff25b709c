"""Transport result record."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Literal

DecompositionPolicy = Literal["none", "shortest-augmenting-path"]


@dataclass
class TransportResult:
    """Scalar transport value plus diagnostics.

    value: flow in path units, or current in conductance x volt.
    per_length_flow: hop length -> units of flow (flow decomposition only).
    residual: relative residual of the Laplacian solve (current only).
    method: which solver produced the value.
    """

    value: float
    method: str
    per_length_flow: dict[int, int] = field(default_factory=dict)
    residual: float | None = None
    decomposition_policy: DecompositionPolicy = "none"
    iterations: int = 0
    diagnostics: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "per_length_flow": {str(k): v for k, v in sorted(self.per_length_flow.items())},
            "residual": self.residual,
            "method": self.method,
            "decomposition_policy": self.decomposition_policy,
            "iterations": self.iterations,
            "diagnostics": self.diagnostics,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    def summary(self) -> dict[str, Any]:
        return {"value": self.value, "method": self.method, "iterations": self.iterations}
