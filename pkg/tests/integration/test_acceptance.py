"""Integration tests: desk-scale ensembles checked against theory at fixed thresholds.

Slow; deselected by default. Run with ``pytest -m integration``.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np
import pytest

from experiments import (
    ExperimentConfig,
    SweepResult,
    flow_histogram,
    optimum_finder,
    overlay_theory,
    reproduce_figure,
    run_sweep,
    tail_slope,
)
from experiments.figures import theory_params_for
from scripts.run_acceptance import summarize_manifest
from theory import TheoryParams, mu, n_star_bounds, theory_curve

pytestmark = pytest.mark.integration

LARGE_N_GRID = [64, 128, 256, 512]


def _er_config(transport: str, mean_degree: float, n_values: list[int], realizations: int, samples: int, **extra):
    return ExperimentConfig(
        graph={"model": "er", "num_nodes": extra.pop("num_nodes", 1024), "mean_degree": mean_degree},
        transport=transport,
        n_values=n_values,
        realizations=realizations,
        samples=samples,
        seed=extra.pop("seed", 11),
        workers=2,
        progress=False,
        **extra,
    )


def _with_theory(cfg: ExperimentConfig, kinds: list[str]) -> SweepResult:
    sweep = run_sweep(cfg)
    return overlay_theory(sweep, theory_params_for(cfg, sweep), kinds)


def _per_n(sweep: SweepResult) -> tuple[np.ndarray, np.ndarray]:
    table = sweep.table
    n = table["n"].to_numpy(dtype=np.float64)
    return table["mean"].to_numpy() / n, table["stderr"].to_numpy() / n


@pytest.fixture(scope="module")
def large_n_flow() -> SweepResult:
    return _with_theory(_er_config("flow", 8.0, LARGE_N_GRID, 5, 4, decompose=False), ["flow_large_n"])


def test_small_n_flow_within_five_percent() -> None:
    cfg = _er_config("flow", 8.0, [1, 2, 3, 5, 8], 20, 20, decompose=False)
    sweep = _with_theory(cfg, ["flow_small_n"])
    assert (sweep.table["samples"] >= 400).all()
    assert (sweep.table["rel_dev_flow_small_n"].abs() <= 0.05).all(), sweep.table.to_string()


def test_flow_per_source_has_an_interior_optimum() -> None:
    grid = [1, 2, 4, 8, 16, 32, 64, 128, 256, 512]
    sweep = run_sweep(_er_config("flow", 8.0, grid, 10, 10, decompose=False))
    per_n, _ = _per_n(sweep)
    optimum = optimum_finder(sweep)
    peak = per_n.max()
    assert not optimum.at_boundary
    assert per_n[0] < peak and per_n[-1] < peak
    assert optimum.n_opt >= math.floor(math.sqrt(1024 / 8.0))
    assert per_n[-1] <= 0.8 * peak


def test_scale_free_tail_exponent_and_collapse() -> None:
    gamma, m, n_list = 2.5, 2, [1, 3, 5]
    cfg = ExperimentConfig(
        graph={"model": "sf", "num_nodes": 4096, "gamma": gamma, "m": m},
        transport="flow",
        decompose=False,
        realizations=50,
        samples=200,
        seed=5,
        workers=2,
        progress=False,
    )
    hists = flow_histogram(cfg, n_list, log_bins=True)
    for n in n_list:
        assert hists[n].samples >= 10_000
        assert tail_slope(hists[n], min_value=2.0 * n * m) == pytest.approx(-(2 * gamma - 1), abs=0.4)

    # collapsed densities on shared tail bins, each bin holding at least 10 samples in both curves
    collapsed = {n: hists[n].collapse(gamma) for n in n_list}
    tail_start = 2.0 * max(n_list) * m
    for a in n_list:
        for b in n_list:
            if a >= b:
                continue
            ha, hb = collapsed[a], collapsed[b]
            counts_a = np.rint(hists[a].mass * hists[a].samples)
            counts_b = np.rint(hists[b].mass * hists[b].samples)
            shared = 0
            for i, left in enumerate(ha.bin_left):
                j = np.flatnonzero(np.isclose(hb.bin_left, left))
                if left < tail_start or not j.size or counts_a[i] < 10 or counts_b[j[0]] < 10:
                    continue
                ratio = ha.density[i] / hb.density[j[0]]
                assert 0.5 <= ratio <= 2.0, f"n={a} vs n={b} at F={left:.3g}: ratio {ratio:.3g}"
                shared += 1
            assert shared >= 2


def test_large_n_flow_within_ten_percent(large_n_flow: SweepResult) -> None:
    deviation = large_n_flow.table["rel_dev_flow_large_n"].abs().to_numpy()
    assert (deviation <= 0.10).all(), large_n_flow.table.to_string()
    assert deviation[-1] < deviation[0]


def test_large_n_current_within_fifteen_percent() -> None:
    sweep = _with_theory(_er_config("current", 4.0, LARGE_N_GRID, 5, 4), ["current_large_n"])
    table = sweep.table[sweep.table["n"] >= 1024 // 8]
    assert len(table) == 3
    assert (table["rel_dev_current_large_n"].abs() <= 0.15).all(), sweep.table.to_string()


def test_flow_and_current_efficiency_diverge(large_n_flow: SweepResult) -> None:
    current = run_sweep(_er_config("current", 8.0, LARGE_N_GRID, 5, 4))
    flow_per_n, flow_se = _per_n(large_n_flow)
    current_per_n, current_se = _per_n(current)
    for i in range(len(LARGE_N_GRID) - 1):
        flow_band = 2 * math.hypot(flow_se[i], flow_se[i + 1])
        current_band = 2 * math.hypot(current_se[i], current_se[i + 1])
        assert flow_per_n[i + 1] <= flow_per_n[i] + flow_band
        assert current_per_n[i + 1] >= current_per_n[i] - current_band


@pytest.mark.parametrize("mean_degree", [3.0, 4.0])
def test_multicommodity_flow_follows_recursion(mean_degree: float) -> None:
    params = TheoryParams(num_nodes=128, mean_degree=mean_degree)
    _, _, n_star = n_star_bounds(params)
    grid = [n for n in (1, 2, 3, 5, 8, 13, 20, 30, 40) if n <= n_star / 2]
    assert grid

    curve = theory_curve("mcflow_recursion", params, grid)
    assert curve["value"].iloc[0] == mu(mean_degree)

    cfg = _er_config("mcflow", mean_degree, grid, 5, 8, num_nodes=128, mcflow_method="fractional")
    sweep = overlay_theory(run_sweep(cfg), params, ["mcflow_recursion"])
    assert (sweep.table["rel_dev_mcflow_recursion"].abs() <= 0.15).all(), sweep.table.to_string()


def test_desk_figure_end_to_end(tmp_path: Path) -> None:
    manifest_path = reproduce_figure("3b", "desk", tmp_path, seed=2, workers=2)
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    (panel,) = manifest["panels"]
    assert (tmp_path / panel["outputs"]["csv"][0]).exists()
    lines = summarize_manifest(manifest_path)
    assert len(lines) == 1
    assert "n_opt=" in lines[0]
