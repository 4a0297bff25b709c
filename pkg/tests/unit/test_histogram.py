"""Unit tests for linear and logarithmic flow histograms."""

from pathlib import Path

import numpy as np
import pytest

from experiments import ExperimentConfig, FlowHistogram, flow_histogram, linear_histogram, log_binned_histogram, tail_slope
from tools.errors import FitError, SweepError


def test_linear_histogram_unit_bins() -> None:
    hist = linear_histogram([0, 1, 1, 2], n=3)
    assert hist.bin_left.tolist() == [0.0, 1.0, 2.0]
    assert hist.bin_right.tolist() == [1.0, 2.0, 3.0]
    assert hist.mass.tolist() == pytest.approx([0.25, 0.5, 0.25])
    assert hist.n == 3
    assert hist.samples == 4
    assert hist.info["integral"]


def test_linear_histogram_point_mass() -> None:
    hist = linear_histogram([1.0] * 7)
    assert hist.mass.tolist() == [1.0]
    assert hist.bin_left.tolist() == [1.0]


def test_linear_histogram_rejects_empty() -> None:
    with pytest.raises(SweepError):
        linear_histogram([])


def test_log_binned_integer_widths() -> None:
    hist = log_binned_histogram([0, 1, 2, 3, 10, 100], bins_per_decade=1)
    assert hist.log_binned
    assert hist.bin_left.tolist() == pytest.approx([1.0, 10.0, 100.0])
    assert hist.width.tolist() == [9.0, 90.0, 900.0]
    assert hist.mass.tolist() == pytest.approx([3 / 6, 1 / 6, 1 / 6])
    assert hist.zero_mass == pytest.approx(1 / 6)
    assert hist.mass.sum() + hist.zero_mass == pytest.approx(1.0)
    assert hist.density[0] == pytest.approx(0.5 / 9.0)


def test_log_binned_drops_empty_bins() -> None:
    hist = log_binned_histogram([1.0, 1000.0], bins_per_decade=2)
    assert hist.mass.size == 2
    assert np.all(hist.mass > 0)


def test_log_binned_needs_positive_values() -> None:
    with pytest.raises(SweepError):
        log_binned_histogram([0.0, 0.0])


def _power_law_hist(exponent: float, bins: int = 10) -> FlowHistogram:
    edges = 10.0 ** (np.arange(bins + 1) / 5.0)
    left, right = edges[:-1], edges[1:]
    width = right - left
    centers = np.sqrt(left * right)
    return FlowHistogram(left, right, width * centers**exponent, width, log_binned=True)


def test_tail_slope_recovers_exponent() -> None:
    assert tail_slope(_power_law_hist(-4.0), min_value=1.0) == pytest.approx(-4.0)
    assert tail_slope(_power_law_hist(-2.5), min_value=3.0) == pytest.approx(-2.5)


def test_tail_slope_needs_three_bins() -> None:
    with pytest.raises(FitError):
        tail_slope(_power_law_hist(-3.0), min_value=50.0)


def test_collapse_scales_mass() -> None:
    hist = linear_histogram([1, 2, 2, 3], n=4)
    collapsed = hist.collapse(2.5)
    assert collapsed.mass.tolist() == pytest.approx((hist.mass / 4.0**3).tolist())
    assert collapsed.info["collapsed_gamma"] == 2.5
    assert hist.mass.sum() == pytest.approx(1.0)


def test_flow_histogram_on_fixed_graph(fixtures_dir: Path) -> None:
    cfg = ExperimentConfig(
        graph={"model": "edgelist", "path": str(fixtures_dir / "single_edge.txt")},
        n_values=[1],
        realizations=2,
        samples=3,
        workers=1,
        progress=False,
    )
    hists = flow_histogram(cfg, [1])
    assert set(hists) == {1}
    assert hists[1].mass.tolist() == [1.0]
    assert hists[1].samples == 6


def test_histogram_csv(tmp_path: Path) -> None:
    path = linear_histogram([0, 1, 1]).to_csv(tmp_path / "h.csv")
    assert path.read_text(encoding="utf-8").splitlines()[0] == "bin_left,bin_right,mass"
