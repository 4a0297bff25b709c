"""Experiment configuration and result records."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal

import pandas as pd
from pydantic import BaseModel, Field, field_validator, model_validator

from netgen.edgelist import load_edge_list
from netgen.generators import gen_er, gen_sf_config
from netgen.models import Graph, TerminalMode

logger = logging.getLogger(__name__)

GraphModel = Literal["er", "sf", "edgelist"]
TransportKind = Literal["flow", "current", "mcflow"]
McFlowMethodName = Literal["auto", "fractional", "lp", "garg-konemann", "integral-exact"]


class GraphSpec(BaseModel):
    """Which graphs a sweep draws: ER, configuration-model SF, or one edge list."""

    model: GraphModel
    num_nodes: int | None = Field(default=None, ge=2)
    mean_degree: float | None = Field(default=None, gt=0.0)
    gamma: float | None = Field(default=None, gt=2.0)
    m: int = Field(default=2, ge=1)
    path: str | None = None

    model_config = {"extra": "forbid", "frozen": True}

    @model_validator(mode="after")
    def _check_model_fields(self) -> GraphSpec:
        if self.model == "er" and (self.num_nodes is None or self.mean_degree is None):
            raise ValueError("er graphs need num_nodes and mean_degree")
        if self.model == "er" and self.mean_degree >= self.num_nodes - 1:
            raise ValueError("er mean_degree must be below N - 1")
        if self.model == "sf" and (self.num_nodes is None or self.gamma is None):
            raise ValueError("sf graphs need num_nodes and gamma")
        if self.model == "edgelist" and not self.path:
            raise ValueError("edgelist graphs need a path")
        return self

    @property
    def is_fixed(self) -> bool:
        """True when every realization is the same graph."""
        return self.model == "edgelist"

    def build(self, seed: int) -> Graph:
        if self.model == "er":
            return gen_er(self.num_nodes, self.mean_degree, seed)
        if self.model == "sf":
            return gen_sf_config(self.num_nodes, self.gamma, self.m, seed)
        return load_edge_list(Path(self.path))


class ExperimentConfig(BaseModel):
    """One sweep: graph ensemble, transport kind, n grid and sample sizes.

    An empty ``n_values`` means the default Fibonacci grid up to the largest
    admissible n. ``tol`` and ``workers`` fall back to Settings when None.
    """

    graph: GraphSpec
    transport: TransportKind = "flow"
    n_values: list[int] = Field(default_factory=list)
    realizations: int = Field(default=50, ge=1)
    samples: int = Field(default=20, ge=1)
    seed: int = Field(default=0, ge=0)
    tol: float | None = Field(default=None, gt=0.0, lt=1.0)
    mcflow_method: McFlowMethodName = "fractional"
    decompose: bool = True
    workers: int | None = Field(default=None, ge=1)
    output: str | None = None
    progress: bool = True
    label: str | None = None

    model_config = {"extra": "forbid", "frozen": True}

    @field_validator("n_values")
    @classmethod
    def _sorted_unique(cls, v: list[int]) -> list[int]:
        if any(n < 1 for n in v):
            raise ValueError("n values must be >= 1")
        return sorted(set(v))

    @model_validator(mode="after")
    def _check_n_range(self) -> ExperimentConfig:
        size = self.graph.num_nodes
        if size is not None and self.n_values and self.n_values[-1] > self.max_n(size):
            raise ValueError(f"n={self.n_values[-1]} above the {self.terminal_mode} limit for N={size}")
        return self

    @property
    def terminal_mode(self) -> TerminalMode:
        return "ordered-pairs" if self.transport == "mcflow" else "disjoint-sets"

    def max_n(self, num_nodes: int) -> int:
        return num_nodes if self.transport == "mcflow" else num_nodes // 2

    @classmethod
    def from_json_file(cls, path: str | Path) -> ExperimentConfig:
        return cls.model_validate_json(Path(path).read_text(encoding="utf-8"))


@dataclass
class RunningStats:
    """Count, sum and sum of squares; merging is associative and commutative."""

    count: int = 0
    total: float = 0.0
    total_sq: float = 0.0

    def add(self, x: float) -> None:
        self.count += 1
        self.total += x
        self.total_sq += x * x

    def merge(self, other: RunningStats) -> RunningStats:
        return RunningStats(self.count + other.count, self.total + other.total, self.total_sq + other.total_sq)

    def mean(self) -> float:
        return self.total / self.count if self.count else math.nan

    def stderr(self) -> float:
        """Sample standard deviation (ddof=1) over sqrt(count)."""
        if self.count < 2:
            return 0.0 if self.count == 1 else math.nan
        var = (self.total_sq - self.total * self.total / self.count) / (self.count - 1)
        return math.sqrt(max(var, 0.0) / self.count)


@dataclass
class SweepResult:
    """Per-n aggregates of a sweep, one row per n.

    Columns: n, mean, stderr, samples, failures, mean_per_n, then optional
    ``flow_len_<l>``, ``theory_<name>`` and ``rel_dev_<name>`` columns.
    """

    table: pd.DataFrame
    transport: str
    num_nodes: int
    mean_degree: float
    meta: dict[str, Any] = field(default_factory=dict)

    @property
    def n_values(self) -> list[int]:
        return [int(n) for n in self.table["n"]]

    def to_frame(self) -> pd.DataFrame:
        return self.table.copy()

    def to_csv(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.table.to_csv(path, index=False, float_format="%.12g")
        return path

    @classmethod
    def from_csv(
        cls, path: str | Path, *, transport: str, num_nodes: int, mean_degree: float
    ) -> SweepResult:
        return cls(pd.read_csv(path), transport=transport, num_nodes=num_nodes, mean_degree=mean_degree)

    def with_table(self, table: pd.DataFrame) -> SweepResult:
        return SweepResult(table, self.transport, self.num_nodes, self.mean_degree, dict(self.meta))

    def summary(self) -> dict[str, Any]:
        return {"transport": self.transport, "num_nodes": self.num_nodes, "points": len(self.table)}
