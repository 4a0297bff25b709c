"""Ensemble sweeps over the number of sources/sinks.

Work is split by realization: realization r draws one graph from
seed (base, STREAM_GRAPH, r) and evaluates every n on it with terminal
seeds (base, STREAM_TERMINALS, n, r, s). Realizations are independent and
run sequentially or on a process pool; results are merged in realization
order, so the output does not depend on the worker count.
"""

from __future__ import annotations

import logging
import sys
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterator

import numpy as np
import pandas as pd
from tqdm import tqdm

import transport
from experiments.models import ExperimentConfig, GraphSpec, RunningStats, SweepResult
from netgen.edgelist import load_edge_list
from netgen.models import Graph
from netgen.terminals import degree_sum, sample_terminals
from tools.defaults import resolve
from tools.errors import NetfluxError, ParameterError, SweepError
from tools.seeding import STREAM_GRAPH, STREAM_TERMINALS, derive_seed

logger = logging.getLogger(__name__)

DEFAULT_FAILURE_LIMIT = 0.10


def default_n_grid(max_n: int) -> list[int]:
    """Fibonacci-spaced 1, 2, 3, 5, 8, ... up to max_n, with max_n itself included."""
    if max_n < 1:
        return []
    grid = [1]
    a, b = 2, 3
    while a <= max_n:
        grid.append(a)
        a, b = b, a + b
    if grid[-1] != max_n:
        grid.append(max_n)
    return grid


@dataclass
class RealizationOutcome:
    """Per-n raw samples of one graph realization."""

    realization: int
    num_nodes: int
    mean_degree: float
    values: dict[int, list[float]] = field(default_factory=lambda: defaultdict(list))
    degree_sums: dict[int, list[tuple[int, int]]] = field(default_factory=lambda: defaultdict(list))
    per_length: dict[int, dict[int, int]] = field(default_factory=lambda: defaultdict(dict))
    failures: dict[int, int] = field(default_factory=lambda: defaultdict(int))
    errors: list[str] = field(default_factory=list)


@lru_cache(maxsize=4)
def _load_fixed(path: str) -> Graph:
    return load_edge_list(Path(path))


def _build_graph(spec: GraphSpec, seed: int, realization: int) -> Graph:
    if spec.is_fixed:
        return _load_fixed(spec.path)
    return spec.build(derive_seed(seed, STREAM_GRAPH, realization))


def resolve_n_values(cfg: ExperimentConfig, num_nodes: int) -> list[int]:
    """Configured n grid, or the default grid; checked against N."""
    max_n = cfg.max_n(num_nodes)
    grid = list(cfg.n_values) or default_n_grid(max_n)
    if not grid or grid[-1] > max_n:
        raise ParameterError(
            f"n grid exceeds the {cfg.terminal_mode} limit {max_n} for N={num_nodes}", {"n_values": grid}
        )
    return grid


def evaluate(cfg: ExperimentConfig, g: Graph, n: int, terminal_seed: int) -> tuple[float, dict[int, int], int, int]:
    """(value, per-length flow, z1, z2) for one terminal draw."""
    t = sample_terminals(g, n, cfg.terminal_mode, terminal_seed)
    z1, z2 = degree_sum(g, t.sources), degree_sum(g, t.sinks)
    if cfg.transport == "flow":
        fn = transport.flow_decompose_by_length if cfg.decompose else transport.max_flow
        result = fn(g, t)
    elif cfg.transport == "current":
        result = transport.electrical_current(g, t, cfg.tol)
    else:
        result = transport.mc_flow(g, t, method=cfg.mcflow_method)
    return float(result.value), result.per_length_flow, z1, z2


def run_realization(cfg_json: str, realization: int, n_values: tuple[int, ...] | None = None) -> RealizationOutcome:
    """Evaluate every (n, sample) on realization ``realization``; failures are recorded."""
    cfg = ExperimentConfig.model_validate_json(cfg_json)
    try:
        g = _build_graph(cfg.graph, cfg.seed, realization)
    except NetfluxError as e:
        size = cfg.graph.num_nodes
        grid = list(n_values) if n_values else (resolve_n_values(cfg, size) if size else [])
        out = RealizationOutcome(realization, cfg.graph.num_nodes or 0, float("nan"))
        for n in grid:
            out.failures[n] += cfg.samples
        out.errors.append(f"{type(e).__name__}: {e}")
        logger.warning("realization=%d generation failed: %s", realization, e)
        return out

    grid = list(n_values) if n_values else resolve_n_values(cfg, g.num_nodes)
    out = RealizationOutcome(realization, g.num_nodes, g.mean_degree)
    for n in grid:
        for s in range(cfg.samples):
            seed = derive_seed(cfg.seed, STREAM_TERMINALS, n, realization, s)
            try:
                value, per_length, z1, z2 = evaluate(cfg, g, n, seed)
            except (NetfluxError, ArithmeticError) as e:
                out.failures[n] += 1
                out.errors.append(f"n={n} sample={s}: {type(e).__name__}: {e}")
                logger.warning("realization=%d n=%d sample=%d failed: %s", realization, n, s, e)
                continue
            out.values[n].append(value)
            out.degree_sums[n].append((z1, z2))
            bucket = out.per_length[n]
            for length, units in per_length.items():
                bucket[length] = bucket.get(length, 0) + units
    return out


def _realizations(cfg: ExperimentConfig, n_values: list[int] | None, progress: bool | None) -> Iterator[RealizationOutcome]:
    count = 1 if cfg.graph.is_fixed else cfg.realizations
    workers = int(resolve(cfg.workers, "workers", 1))
    show = cfg.progress if progress is None else progress
    bar = tqdm(total=count, desc=cfg.label or f"{cfg.transport} sweep", disable=not show or not sys.stderr.isatty())
    cfg_json = cfg.model_dump_json()
    grid = tuple(n_values) if n_values else None
    try:
        if workers == 1 or count == 1:
            for r in range(count):
                yield run_realization(cfg_json, r, grid)
                bar.update(1)
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for out in pool.map(run_realization, [cfg_json] * count, range(count), [grid] * count):
                    yield out
                    bar.update(1)
    finally:
        bar.close()


def _samples_per_realization(cfg: ExperimentConfig) -> int:
    # a fixed graph stretches all realizations' samples onto one graph
    return cfg.realizations * cfg.samples if cfg.graph.is_fixed else cfg.samples


def _effective(cfg: ExperimentConfig) -> ExperimentConfig:
    if cfg.graph.is_fixed and cfg.realizations > 1:
        return cfg.model_copy(update={"samples": _samples_per_realization(cfg)})
    return cfg


def run_sweep(cfg: ExperimentConfig, *, progress: bool | None = None) -> SweepResult:
    """Mean, standard error and sample count of the transport value per n.

    Raises SweepError if more than ``failure_fraction_limit`` of all
    instances failed.
    """
    run_cfg = _effective(cfg)
    stats: dict[int, RunningStats] = {}
    lengths: dict[int, dict[int, int]] = {}
    failures: dict[int, int] = defaultdict(int)
    mean_degrees: list[float] = []
    num_nodes = cfg.graph.num_nodes or 0
    errors: list[str] = []
    for out in _realizations(run_cfg, list(cfg.n_values) or None, progress):
        num_nodes = out.num_nodes or num_nodes
        if np.isfinite(out.mean_degree):
            mean_degrees.append(out.mean_degree)
        for n, values in out.values.items():
            acc = stats.setdefault(n, RunningStats())
            for v in values:
                acc.add(v)
            bucket = lengths.setdefault(n, {})
            for length, units in out.per_length[n].items():
                bucket[length] = bucket.get(length, 0) + units
        for n, k in out.failures.items():
            failures[n] += k
            stats.setdefault(n, RunningStats())
        errors.extend(out.errors)

    total_ok = sum(s.count for s in stats.values())
    total_failed = sum(failures.values())
    limit = float(resolve(None, "failure_fraction_limit", DEFAULT_FAILURE_LIMIT))
    attempted = total_ok + total_failed
    if attempted == 0:
        raise SweepError("sweep produced no instances")
    if total_failed / attempted > limit:
        raise SweepError(
            f"{total_failed} of {attempted} instances failed (limit {limit:.0%})",
            {"failures": dict(failures), "first_errors": errors[:5]},
        )

    rows = []
    max_length = max((max(b) for b in lengths.values() if b), default=0)
    for n in sorted(stats):
        acc = stats[n]
        row = {
            "n": n,
            "mean": acc.mean(),
            "stderr": acc.stderr(),
            "samples": acc.count,
            "failures": failures.get(n, 0),
            "mean_per_n": acc.mean() / n,
        }
        if cfg.transport == "flow" and cfg.decompose:
            bucket = lengths.get(n, {})
            for length in range(1, max_length + 1):
                row[f"flow_len_{length}"] = bucket.get(length, 0) / acc.count if acc.count else np.nan
        rows.append(row)
    mean_degree = float(np.mean(mean_degrees)) if mean_degrees else float(cfg.graph.mean_degree or 0.0)
    logger.info(
        "run_sweep transport=%s N=%d points=%d samples=%d failures=%d",
        cfg.transport,
        num_nodes,
        len(rows),
        total_ok,
        total_failed,
    )
    result = SweepResult(
        pd.DataFrame(rows),
        transport=cfg.transport,
        num_nodes=num_nodes,
        mean_degree=mean_degree,
        meta={"config": cfg.model_dump(mode="json"), "failures": total_failed},
    )
    if cfg.output:
        result.to_csv(cfg.output)
    return result


def collect_samples(cfg: ExperimentConfig, n_values: list[int], *, progress: bool | None = None) -> dict[int, pd.DataFrame]:
    """Raw per-instance samples: columns realization, sample, value, z1, z2."""
    run_cfg = _effective(cfg)
    frames: dict[int, list[dict]] = {n: [] for n in n_values}
    for out in _realizations(run_cfg, n_values, progress):
        for n in n_values:
            for s, (value, (z1, z2)) in enumerate(zip(out.values[n], out.degree_sums[n])):
                frames[n].append({"realization": out.realization, "sample": s, "value": value, "z1": z1, "z2": z2})
    return {n: pd.DataFrame(rows, columns=["realization", "sample", "value", "z1", "z2"]) for n, rows in frames.items()}
