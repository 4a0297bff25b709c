"""Ensemble experiments: sweeps over n, histograms, theory overlay, figure presets.

- models: GraphSpec, ExperimentConfig, RunningStats, SweepResult
- runner: run_sweep, collect_samples, default_n_grid
- histogram: FlowHistogram, flow_histogram, log/linear binning, tail_slope
- analysis: optimum_finder, overlay_theory
- figures: figure_presets, reproduce_figure, rerun_manifest
"""

from experiments.analysis import OptimumResult, optimum_finder, overlay_theory
from experiments.figures import FIGURE_IDS, SCALES, FigurePanel, figure_presets, reproduce_figure, rerun_manifest
from experiments.histogram import (
    FlowHistogram,
    flow_histogram,
    linear_histogram,
    log_binned_histogram,
    tail_slope,
)
from experiments.models import ExperimentConfig, GraphSpec, RunningStats, SweepResult
from experiments.runner import collect_samples, default_n_grid, run_realization, run_sweep

__all__ = [
    "GraphSpec",
    "ExperimentConfig",
    "RunningStats",
    "SweepResult",
    "run_sweep",
    "run_realization",
    "collect_samples",
    "default_n_grid",
    "FlowHistogram",
    "flow_histogram",
    "linear_histogram",
    "log_binned_histogram",
    "tail_slope",
    "OptimumResult",
    "optimum_finder",
    "overlay_theory",
    "FIGURE_IDS",
    "SCALES",
    "FigurePanel",
    "figure_presets",
    "reproduce_figure",
    "rerun_manifest",
]
