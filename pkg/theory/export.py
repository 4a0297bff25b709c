"""Theory curves over an n grid as DataFrames / CSV."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Iterable, Literal

import pandas as pd

from theory.large_n import large_n_components, mean_current_large_n, mean_flow_large_n
from theory.mcflow import effective_degree_trajectory, mc_flow_theory, mu
from theory.models import TheoryParams
from theory.small_n import mean_current_small_n, mean_flow_small_n
from tools.errors import ParameterError

logger = logging.getLogger(__name__)

TheoryKind = Literal[
    "flow_small_n",
    "current_small_n",
    "flow_large_n",
    "current_large_n",
    "mcflow_recursion",
    "mcflow_small_n",
]
THEORY_KINDS: tuple[str, ...] = (
    "flow_small_n",
    "current_small_n",
    "flow_large_n",
    "current_large_n",
    "mcflow_recursion",
    "mcflow_small_n",
)


def _rows_single(kind: str, params: TheoryParams, n_values: list[int]) -> list[dict]:
    rows = []
    for n in n_values:
        at = params.with_n(n)
        row: dict = {"n": n}
        if kind == "flow_small_n":
            row["value"] = mean_flow_small_n(at)
        elif kind == "current_small_n":
            row["value"] = mean_current_small_n(at)
        else:
            comp = large_n_components(at)
            row["value"] = mean_flow_large_n(at) if kind == "flow_large_n" else mean_current_large_n(at)
            row.update(comp)
        rows.append(row)
    return rows


def _rows_mcflow(kind: str, params: TheoryParams, n_values: list[int]) -> list[dict]:
    if kind == "mcflow_small_n":
        per_pair = mu(params.mean_degree)
        return [{"n": n, "value": n * per_pair} for n in n_values]
    n_max = max(n_values)
    curve = mc_flow_theory(params, n_max)
    ks = effective_degree_trajectory(params, n_max)
    return [{"n": n, "value": float(curve[n - 1]), "k_n": float(ks[n])} for n in n_values]


def theory_curve(kind: TheoryKind, params: TheoryParams, n_values: Iterable[int]) -> pd.DataFrame:
    """Columns: n, value, value_per_n, then per-kind components."""
    if kind not in THEORY_KINDS:
        raise ParameterError(f"unknown theory kind {kind!r}", {"kinds": THEORY_KINDS})
    grid = sorted({int(n) for n in n_values})
    if not grid or grid[0] < 1:
        raise ParameterError("n grid must be non-empty with n >= 1", {"n_values": grid})
    if kind.startswith("mcflow"):
        rows = _rows_mcflow(kind, params, grid)
    else:
        rows = _rows_single(kind, params, grid)
    df = pd.DataFrame(rows)
    df.insert(2, "value_per_n", df["value"] / df["n"])
    logger.debug("theory_curve kind=%s points=%d", kind, len(df))
    return df


def write_theory_csv(df: pd.DataFrame, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False, float_format="%.12g")
    return path
