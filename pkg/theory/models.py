"""Theory parameters and probability mass records."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np
from pydantic import BaseModel, Field, computed_field, model_validator

from tools.errors import ParameterError


class TheoryParams(BaseModel):
    """Network and terminal parameters entering every prediction.

    p is derived as mean_degree / (N - 1). gamma and m describe the
    power-law degree distribution and are only read by scale-free helpers.
    c is the prefactor of the single-pair current law.
    """

    num_nodes: int = Field(..., ge=2, description="N")
    mean_degree: float = Field(..., gt=0.0, description="<k>")
    n: int = Field(default=1, ge=0, description="sources (= sinks, = pairs)")
    gamma: float | None = Field(default=None, gt=2.0, description="power-law degree exponent")
    m: int = Field(default=1, ge=1, description="minimum degree of the power law")
    c: float = Field(default=1.0, gt=0.0, le=1.0, description="current fitting prefactor")

    model_config = {"extra": "forbid", "frozen": True}

    @computed_field  # type: ignore[prop-decorator]
    @property
    def p(self) -> float:
        return self.mean_degree / (self.num_nodes - 1)

    @model_validator(mode="after")
    def _check_ranges(self) -> TheoryParams:
        if not 0.0 < self.p < 1.0:
            raise ValueError(f"p = <k>/(N-1) must lie in (0, 1), got {self.p}")
        if 2 * self.n > self.num_nodes:
            raise ValueError(f"n={self.n} exceeds N/2={self.num_nodes / 2}")
        return self

    def with_n(self, n: int) -> TheoryParams:
        """Same network, another n (validated)."""
        return self.replace(n=n)

    def replace(self, **changes: Any) -> TheoryParams:
        data = self.model_dump(exclude={"p"})
        data.update(changes)
        try:
            return TheoryParams(**data)
        except ValueError as e:
            raise ParameterError(str(e), {"changes": changes}) from e

    def require_gamma(self) -> float:
        if self.gamma is None:
            raise ParameterError("gamma is required for scale-free theory")
        return self.gamma


@dataclass
class Pdf:
    """Probability mass on a grid.

    ``mass`` sums to 1 - ``truncation_mass`` (the probability left beyond the
    support when an infinite sum was cut).
    """

    support: np.ndarray
    mass: np.ndarray
    truncation_mass: float = 0.0
    info: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.support = np.asarray(self.support)
        mass = np.asarray(self.mass, dtype=np.float64)
        if mass.shape != self.support.shape:
            raise ParameterError("support and mass differ in shape")
        if mass.size and mass.min() < -1e-12:
            raise ParameterError("negative probability mass", {"min": float(mass.min())})
        self.mass = np.clip(mass, 0.0, None)
        self.truncation_mass = max(0.0, float(self.truncation_mass))

    def total(self) -> float:
        return float(self.mass.sum())

    def mean(self) -> float:
        return float(np.dot(self.support, self.mass))

    def second_moment(self) -> float:
        return float(np.dot(np.asarray(self.support, dtype=np.float64) ** 2, self.mass))

    def at(self, x: float) -> float:
        """Mass at support point ``x`` (0 off the support)."""
        hit = np.flatnonzero(self.support == x)
        return float(self.mass[hit[0]]) if hit.size else 0.0

    def to_dict(self) -> dict[str, Any]:
        return {
            "support": self.support.tolist(),
            "mass": self.mass.tolist(),
            "truncation_mass": self.truncation_mass,
            "info": self.info,
        }
