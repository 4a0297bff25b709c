"""Preset experiments for each published figure, at desk or full scale.

Desk scale shrinks N and the ensemble sizes so one figure runs in minutes
on a single core:

    1   ER flow per source/sink vs n           N 4096 -> 1024, <k> = 8
    2a  SF flow pdf for several n (collapse)   synthetic gamma = 2.5, m = 2, or an edge list
    2b  SF mean flow vs n                      N 4096 -> 1024
    3a  ER mean flow, large n                  N 4096 -> 1024, <k> = 8
    3b  ER mean current, large n               N = 1024, <k> = 4
    4   ER flow and current per source/sink    N 4096 -> 1024, <k> = 8
    5b  ER multi-commodity flow                N = 128, <k> = 3..6, n up to 40

Every run writes one CSV per panel and ``manifest.json`` holding the
resolved configs; ``rerun_manifest`` replays a manifest.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from importlib import metadata
from pathlib import Path
from typing import Any, Literal

import pandas as pd

from experiments.analysis import optimum_finder, overlay_theory
from experiments.histogram import DEFAULT_BINS_PER_DECADE, flow_histogram, tail_slope
from experiments.models import ExperimentConfig, GraphSpec, SweepResult
from experiments.runner import run_sweep
from theory.models import TheoryParams
from theory.small_n import sf_flow_tail_exponent
from tools.errors import FitError, ParameterError

logger = logging.getLogger(__name__)

Scale = Literal["desk", "full"]
FIGURE_IDS: tuple[str, ...] = ("1", "2a", "2b", "3a", "3b", "4", "5b")
SCALES: tuple[str, ...] = ("desk", "full")
MANIFEST_NAME = "manifest.json"

SF_GAMMA = 2.5
SF_M = 2


@dataclass
class FigurePanel:
    """One curve (sweep) or one set of histograms of a figure."""

    name: str
    config: ExperimentConfig
    theory_kinds: tuple[str, ...] = ()
    histogram_n: tuple[int, ...] = ()
    log_bins: bool = False
    bins_per_decade: int = DEFAULT_BINS_PER_DECADE
    collapse_gamma: float | None = None

    @property
    def is_histogram(self) -> bool:
        return bool(self.histogram_n)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "config": self.config.model_dump(mode="json"),
            "theory_kinds": list(self.theory_kinds),
            "histogram_n": list(self.histogram_n),
            "log_bins": self.log_bins,
            "bins_per_decade": self.bins_per_decade,
            "collapse_gamma": self.collapse_gamma,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> FigurePanel:
        return cls(
            name=d["name"],
            config=ExperimentConfig.model_validate(d["config"]),
            theory_kinds=tuple(d.get("theory_kinds", ())),
            histogram_n=tuple(d.get("histogram_n", ())),
            log_bins=bool(d.get("log_bins", False)),
            bins_per_decade=int(d.get("bins_per_decade", DEFAULT_BINS_PER_DECADE)),
            collapse_gamma=d.get("collapse_gamma"),
        )


def _doubling_grid(num_nodes: int, count: int) -> list[int]:
    top = num_nodes // 2
    return sorted({max(1, top >> i) for i in range(count)})


def _er(num_nodes: int, k: float) -> GraphSpec:
    return GraphSpec(model="er", num_nodes=num_nodes, mean_degree=k)


def _sf(num_nodes: int) -> GraphSpec:
    return GraphSpec(model="sf", num_nodes=num_nodes, gamma=SF_GAMMA, m=SF_M)


def figure_presets(
    figure_id: str,
    scale: Scale = "desk",
    *,
    seed: int = 0,
    workers: int | None = None,
    edge_list: str | None = None,
) -> list[FigurePanel]:
    """Panels of ``figure_id`` at ``scale``."""
    if figure_id not in FIGURE_IDS:
        raise ParameterError(f"unknown figure id {figure_id!r}", {"figure_ids": FIGURE_IDS})
    if scale not in SCALES:
        raise ParameterError(f"unknown scale {scale!r}", {"scales": SCALES})
    desk = scale == "desk"
    common: dict[str, Any] = {"seed": seed, "workers": workers}
    panels: list[FigurePanel] = []

    if figure_id == "1":
        size = 1024 if desk else 4096
        for k in (8.0,) if desk else (8.0, 16.0):
            cfg = ExperimentConfig(
                graph=_er(size, k), transport="flow", realizations=20 if desk else 50, samples=20, **common
            )
            panels.append(FigurePanel(f"er_k{k:g}", cfg, ("flow_small_n", "flow_large_n")))
    elif figure_id == "2a":
        n_list = (1, 3, 5) if desk else (1, 3, 5, 10)
        graph = GraphSpec(model="edgelist", path=edge_list) if edge_list else _sf(4096)
        cfg = ExperimentConfig(
            graph=graph, transport="flow", decompose=False, realizations=10 if desk else 50, samples=200, **common
        )
        panels.append(
            FigurePanel("edgelist" if edge_list else "sf", cfg, histogram_n=n_list, log_bins=True, collapse_gamma=SF_GAMMA)
        )
    elif figure_id == "2b":
        size = 1024 if desk else 4096
        cfg = ExperimentConfig(
            graph=_sf(size), transport="flow", realizations=10 if desk else 50, samples=10 if desk else 20, **common
        )
        panels.append(FigurePanel("sf", cfg, ("flow_large_n",)))
    elif figure_id == "3a":
        size = 1024 if desk else 4096
        for k in (8.0,) if desk else (8.0, 16.0):
            cfg = ExperimentConfig(
                graph=_er(size, k),
                transport="flow",
                n_values=_doubling_grid(size, 4 if desk else 6),
                realizations=10 if desk else 50,
                samples=10 if desk else 20,
                **common,
            )
            panels.append(FigurePanel(f"er_k{k:g}", cfg, ("flow_large_n",)))
    elif figure_id == "3b":
        for k in (4.0,) if desk else (4.0, 8.0):
            cfg = ExperimentConfig(
                graph=_er(1024, k),
                transport="current",
                n_values=_doubling_grid(1024, 4 if desk else 6),
                realizations=10 if desk else 50,
                samples=10 if desk else 20,
                **common,
            )
            panels.append(FigurePanel(f"er_k{k:g}", cfg, ("current_large_n",)))
    elif figure_id == "4":
        size = 1024 if desk else 4096
        for kind, kinds in (
            ("flow", ("flow_small_n", "flow_large_n")),
            ("current", ("current_small_n", "current_large_n")),
        ):
            cfg = ExperimentConfig(
                graph=_er(size, 8.0),
                transport=kind,
                realizations=10 if desk else 50,
                samples=10 if desk else 20,
                **common,
            )
            panels.append(FigurePanel(kind, cfg, kinds))
    else:
        n_values = [1, 2, 3, 4, 5, 6, 8, 10, 12, 15, 20, 25, 30, 35, 40] if desk else list(range(1, 41))
        for k in (3.0, 4.0, 5.0, 6.0):
            cfg = ExperimentConfig(
                graph=_er(128, k),
                transport="mcflow",
                mcflow_method="fractional",
                n_values=n_values,
                realizations=5 if desk else 20,
                samples=4 if desk else 10,
                **common,
            )
            panels.append(FigurePanel(f"er_k{k:g}", cfg, ("mcflow_recursion", "mcflow_small_n")))
    return panels


def theory_params_for(cfg: ExperimentConfig, sweep: SweepResult) -> TheoryParams:
    """Nominal parameters for ER graphs, realized mean degree otherwise."""
    spec = cfg.graph
    if spec.model == "er":
        return TheoryParams(num_nodes=spec.num_nodes, mean_degree=spec.mean_degree)
    return TheoryParams(
        num_nodes=sweep.num_nodes,
        mean_degree=sweep.mean_degree,
        gamma=spec.gamma,
        m=spec.m,
    )


def _csv_name(figure_id: str, panel: str, suffix: str = "") -> str:
    return f"fig{figure_id}_{panel}{suffix}.csv"


def _run_sweep_panel(figure_id: str, panel: FigurePanel, out_dir: Path) -> dict[str, Any]:
    sweep = run_sweep(panel.config.model_copy(update={"output": None}))
    params = theory_params_for(panel.config, sweep)
    sweep = overlay_theory(sweep, params, panel.theory_kinds)
    path = sweep.to_csv(out_dir / _csv_name(figure_id, panel.name))
    extra: dict[str, Any] = {"theory_params": params.model_dump(mode="json")}
    if panel.config.transport != "mcflow" and len(sweep.table) >= 3:
        try:
            extra["optimum"] = optimum_finder(sweep).to_dict()
        except ParameterError as e:
            logger.warning("figure=%s panel=%s no optimum: %s", figure_id, panel.name, e)
    if "n_star" in sweep.meta:
        extra["n_star"] = sweep.meta["n_star"]
    return {"csv": [path.name], **extra}


def _run_histogram_panel(figure_id: str, panel: FigurePanel, out_dir: Path) -> dict[str, Any]:
    hists = flow_histogram(
        panel.config, list(panel.histogram_n), log_bins=panel.log_bins, bins_per_decade=panel.bins_per_decade
    )
    files: list[str] = []
    rows = []
    theory_slope = -sf_flow_tail_exponent(panel.collapse_gamma) if panel.collapse_gamma else None
    for n, hist in sorted(hists.items()):
        files.append(hist.to_csv(out_dir / _csv_name(figure_id, panel.name, f"_n{n}")).name)
        if panel.collapse_gamma:
            collapsed = hist.collapse(panel.collapse_gamma)
            files.append(collapsed.to_csv(out_dir / _csv_name(figure_id, panel.name, f"_n{n}_collapsed")).name)
        try:
            slope = tail_slope(hist, min_value=2.0 * n * SF_M)
        except FitError as e:
            logger.warning("tail fit failed for n=%d: %s", n, e)
            slope = float("nan")
        rows.append({"n": n, "samples": hist.samples, "tail_slope": slope, "theory_slope": theory_slope})
    summary = out_dir / _csv_name(figure_id, panel.name, "_tail")
    pd.DataFrame(rows).to_csv(summary, index=False, float_format="%.12g")
    files.append(summary.name)
    return {"csv": files}


def _package_version() -> str:
    try:
        return metadata.version("netflux")
    except metadata.PackageNotFoundError:
        return "unknown"


def _run_panels(figure_id: str, scale: str, panels: list[FigurePanel], out_dir: Path, extra: dict[str, Any]) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    entries = []
    for panel in panels:
        logger.info("figure=%s panel=%s transport=%s", figure_id, panel.name, panel.config.transport)
        runner = _run_histogram_panel if panel.is_histogram else _run_sweep_panel
        entries.append({**panel.to_dict(), "outputs": runner(figure_id, panel, out_dir)})
    manifest = {
        "package": "netflux",
        "version": _package_version(),
        "figure_id": figure_id,
        "scale": scale,
        **extra,
        "panels": entries,
    }
    path = out_dir / MANIFEST_NAME
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True, default=str) + "\n", encoding="utf-8")
    return path


def reproduce_figure(
    figure_id: str,
    scale: Scale = "desk",
    out_dir: str | Path = "results",
    *,
    seed: int = 0,
    workers: int | None = None,
    edge_list: str | None = None,
) -> Path:
    """Run every panel of ``figure_id``; returns the manifest path."""
    panels = figure_presets(figure_id, scale, seed=seed, workers=workers, edge_list=edge_list)
    return _run_panels(figure_id, scale, panels, Path(out_dir), {"seed": seed, "edge_list": edge_list})


def rerun_manifest(manifest_path: str | Path, out_dir: str | Path | None = None) -> Path:
    """Replay the panels stored in a manifest (same configs, same seeds)."""
    manifest_path = Path(manifest_path)
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    panels = [FigurePanel.from_dict(p) for p in manifest["panels"]]
    target = Path(out_dir) if out_dir is not None else manifest_path.parent
    extra = {k: manifest.get(k) for k in ("seed", "edge_list")}
    return _run_panels(manifest["figure_id"], manifest["scale"], panels, target, extra)
