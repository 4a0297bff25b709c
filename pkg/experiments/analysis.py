"""Post-processing of sweeps: optimum search and theory overlay."""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Iterable

import numpy as np

from experiments.models import SweepResult
from theory.export import theory_curve
from theory.mcflow import n_star_bounds
from theory.models import TheoryParams
from tools.errors import ParameterError, SweepError

logger = logging.getLogger(__name__)

DEFAULT_KINDS: dict[str, tuple[str, ...]] = {
    "flow": ("flow_small_n", "flow_large_n"),
    "current": ("current_small_n", "current_large_n"),
    "mcflow": ("mcflow_recursion", "mcflow_small_n"),
}


@dataclass
class OptimumResult:
    n_opt: int
    value: float  # mean / n at n_opt
    at_boundary: bool
    validity_scale: float  # sqrt(N / <k>)
    beyond_validity_scale: bool

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def optimum_finder(sweep: SweepResult) -> OptimumResult:
    """Grid point maximizing mean / n; ties go to the smallest n.

    Points without a finite mean (every sample failed) are skipped.
    """
    table = sweep.table.sort_values("n")
    table = table[np.isfinite(table["mean"].to_numpy(dtype=np.float64))]
    if len(table) < 3:
        raise ParameterError("optimum search needs at least three points", {"points": len(table)})
    n = table["n"].to_numpy()
    per_n = (table["mean"] / table["n"]).to_numpy()
    idx = int(np.argmax(per_n))
    scale = math.sqrt(sweep.num_nodes / sweep.mean_degree) if sweep.mean_degree > 0 else math.inf
    result = OptimumResult(
        n_opt=int(n[idx]),
        value=float(per_n[idx]),
        at_boundary=idx in (0, len(n) - 1),
        validity_scale=scale,
        beyond_validity_scale=bool(n[idx] >= scale),
    )
    logger.debug("optimum_finder n_opt=%d value=%.6g boundary=%s", result.n_opt, result.value, result.at_boundary)
    return result


def overlay_theory(
    sweep: SweepResult, params: TheoryParams, kinds: Iterable[str] | None = None
) -> SweepResult:
    """Append ``theory_<kind>`` and ``rel_dev_<kind>`` columns for each kind.

    ``kinds`` defaults to the small-n and large-n (or recursion) curves of the
    sweep's transport; an empty list returns the sweep unchanged.
    """
    kinds = list(DEFAULT_KINDS.get(sweep.transport, ()) if kinds is None else kinds)
    if not kinds:
        return sweep
    if params.num_nodes != sweep.num_nodes:
        raise SweepError(
            "theory and sweep describe different networks",
            {"theory_N": params.num_nodes, "sweep_N": sweep.num_nodes},
        )
    table = sweep.to_frame()
    n_values = sweep.n_values
    meta = dict(sweep.meta)
    for kind in kinds:
        if not kind.startswith("mcflow") and max(n_values) * 2 > params.num_nodes:
            raise SweepError(f"n grid exceeds N/2 for {kind}", {"n_max": max(n_values)})
        curve = theory_curve(kind, params, n_values).set_index("n")
        theory = curve.loc[n_values, "value"].to_numpy()
        table[f"theory_{kind}"] = theory
        with np.errstate(divide="ignore", invalid="ignore"):
            table[f"rel_dev_{kind}"] = np.where(theory != 0, (table["mean"].to_numpy() - theory) / theory, np.nan)
        for comp in curve.columns.difference(["value", "value_per_n"]):
            table[f"theory_{kind}_{comp}"] = curve.loc[n_values, comp].to_numpy()
        if kind == "mcflow_recursion":
            lower, upper, recursion = n_star_bounds(params)
            meta["n_star"] = {"lower": lower, "upper": upper, "recursion": recursion}
    out = sweep.with_table(table)
    out.meta = meta
    return out
