"""Unit tests for figure presets, manifests and replay."""

import json
from pathlib import Path

import pytest

import experiments.figures as figures
from experiments import FIGURE_IDS, ExperimentConfig, FigurePanel, figure_presets, reproduce_figure, rerun_manifest
from tools.errors import ParameterError


@pytest.mark.parametrize("figure_id", FIGURE_IDS)
@pytest.mark.parametrize("scale", ["desk", "full"])
def test_every_preset_builds(figure_id: str, scale: str) -> None:
    panels = figure_presets(figure_id, scale, seed=3)
    assert panels
    for panel in panels:
        assert panel.config.seed == 3
        assert panel.is_histogram or panel.theory_kinds


def test_desk_scale_is_smaller() -> None:
    desk = figure_presets("1", "desk")[0].config
    full = figure_presets("1", "full")[0].config
    assert desk.graph.num_nodes == 1024
    assert full.graph.num_nodes == 4096
    assert desk.realizations < full.realizations


def test_multicommodity_preset() -> None:
    panels = figure_presets("5b", "desk")
    assert [p.config.graph.mean_degree for p in panels] == [3.0, 4.0, 5.0, 6.0]
    for panel in panels:
        assert panel.config.graph.num_nodes == 128
        assert panel.config.transport == "mcflow"
        assert panel.config.n_values[-1] == 40


def test_histogram_preset_uses_edge_list() -> None:
    (panel,) = figure_presets("2a", "desk", edge_list="net.txt")
    assert panel.is_histogram
    assert panel.config.graph.model == "edgelist"
    assert panel.name == "edgelist"
    (synthetic,) = figure_presets("2a", "desk")
    assert synthetic.config.graph.model == "sf"
    assert synthetic.log_bins


def test_unknown_figure_or_scale() -> None:
    with pytest.raises(ParameterError):
        figure_presets("9")
    with pytest.raises(ParameterError):
        figure_presets("1", "huge")


def test_panel_dict_round_trip() -> None:
    panel = figure_presets("2a", "desk", seed=5)[0]
    assert FigurePanel.from_dict(json.loads(json.dumps(panel.to_dict()))) == panel


def _tiny_panels(fixtures_dir: Path) -> list[FigurePanel]:
    sweep = ExperimentConfig(
        graph={"model": "er", "num_nodes": 40, "mean_degree": 4.0},
        n_values=[1, 2, 3],
        realizations=2,
        samples=2,
        seed=7,
        workers=1,
        progress=False,
    )
    hist = ExperimentConfig(
        graph={"model": "edgelist", "path": str(fixtures_dir / "path3.txt")},
        decompose=False,
        realizations=1,
        samples=4,
        workers=1,
        progress=False,
    )
    return [
        FigurePanel("er", sweep, ("flow_small_n",)),
        FigurePanel("path", hist, histogram_n=(1,), log_bins=True, collapse_gamma=2.5),
    ]


def test_reproduce_and_replay(monkeypatch: pytest.MonkeyPatch, tmp_path: Path, fixtures_dir: Path) -> None:
    monkeypatch.setattr(figures, "figure_presets", lambda *args, **kwargs: _tiny_panels(fixtures_dir))
    manifest_path = reproduce_figure("1", "desk", tmp_path / "first", seed=7)
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    assert manifest["figure_id"] == "1"
    assert manifest["seed"] == 7
    sweep_panel, hist_panel = manifest["panels"]
    assert sweep_panel["outputs"]["csv"] == ["fig1_er.csv"]
    assert "optimum" in sweep_panel["outputs"]
    assert "fig1_path_n1.csv" in hist_panel["outputs"]["csv"]
    assert "fig1_path_tail.csv" in hist_panel["outputs"]["csv"]
    header = (tmp_path / "first" / "fig1_er.csv").read_text(encoding="utf-8").splitlines()[0]
    assert "theory_flow_small_n" in header

    replay = rerun_manifest(manifest_path, tmp_path / "second")
    assert replay.name == "manifest.json"
    for name in ("fig1_er.csv", "fig1_path_n1.csv"):
        first = (tmp_path / "first" / name).read_text(encoding="utf-8")
        assert (tmp_path / "second" / name).read_text(encoding="utf-8") == first
