"""Unit tests for small-n theory: degree sums, flow and current pmfs, c fit."""

from __future__ import annotations

import math

import numpy as np
import pytest

from theory import (
    Pdf,
    TheoryParams,
    current_pdf_small_n,
    degree_sum_pdf_er,
    degree_sum_pdf_sf,
    fit_c,
    flow_pdf_er,
    flow_pdf_from_degree_sums,
    flow_pdf_sf,
    intra_set_link_correction,
    intra_set_link_probability_exact,
    mean_current_small_n,
    mean_flow_per_node_small_n,
    mean_flow_small_n,
    sf_flow_tail_exponent,
)
from theory.small_n import convolve_power, poisson_pdf
from tools.errors import FitError, ParameterError


def _params(n: int = 1, k: float = 8.0, size: int = 4096, **extra) -> TheoryParams:
    return TheoryParams(num_nodes=size, mean_degree=k, n=n, **extra)


def test_params_validation() -> None:
    assert _params().p == pytest.approx(8.0 / 4095)
    with pytest.raises(ValueError):
        TheoryParams(num_nodes=10, mean_degree=4.0, n=6)
    with pytest.raises(ValueError):
        TheoryParams(num_nodes=10, mean_degree=9.5)
    with pytest.raises(ParameterError):
        _params().with_n(5000)


def test_degree_sum_point_mass_when_empty() -> None:
    pz = degree_sum_pdf_er(_params(n=0))
    assert pz.support.tolist() == [0]
    assert pz.mass.tolist() == [1.0]


@pytest.mark.parametrize("n", [1, 4, 32])
def test_degree_sum_mean_and_normalization(n: int) -> None:
    pz = degree_sum_pdf_er(_params(n=n))
    assert pz.mean() == pytest.approx(n * 8.0, abs=1e-9)
    assert pz.total() + pz.truncation_mass == pytest.approx(1.0, abs=1e-12)
    assert pz.truncation_mass < 1e-9


def test_flow_pdf_zero_term() -> None:
    lam = 3.0
    phi = flow_pdf_er(_params(n=1, k=lam))
    assert phi.at(0) == pytest.approx(2 * math.exp(-lam) - math.exp(-2 * lam), abs=1e-15)


@pytest.mark.parametrize("lam", [0.5, 4.0, 40.0])
def test_closed_form_equals_direct_summation(lam: float) -> None:
    closed = flow_pdf_er(_params(n=1, k=lam, size=1000))
    direct = flow_pdf_from_degree_sums(poisson_pdf(lam))
    assert np.allclose(closed.mass, direct.mass, atol=1e-10, rtol=0)
    assert closed.total() + closed.truncation_mass == pytest.approx(1.0, abs=1e-9)


def test_flow_pdf_matches_sampled_minimum() -> None:
    rng = np.random.default_rng(0)
    draws = np.minimum(rng.poisson(8.0, 200_000), rng.poisson(8.0, 200_000))
    phi = flow_pdf_er(_params())
    empirical = np.bincount(draws, minlength=phi.support.size)[: phi.support.size] / draws.size
    se = np.sqrt(phi.mass * (1 - phi.mass) / draws.size)
    big = phi.mass > 1e-3
    assert np.all(np.abs(empirical[big] - phi.mass[big]) <= 5 * se[big])


def test_mean_flow_bounds_and_monotone_per_node() -> None:
    per_node = [mean_flow_per_node_small_n(_params(n=n)) for n in range(1, 60)]
    assert all(b > a for a, b in zip(per_node, per_node[1:]))
    for n in (1, 10, 50):
        total = mean_flow_small_n(_params(n=n))
        assert 0.0 <= total <= n * 8.0
    assert mean_flow_small_n(_params(n=0)) == 0.0


def test_current_point_mass_is_half_degree() -> None:
    pz = Pdf(np.array([4]), np.array([1.0]))
    grid = np.arange(0.0, 10.0, 0.5)
    pdf = current_pdf_small_n(_params(), grid, pz=pz)
    assert pdf.at(2.0) == pytest.approx(1.0)
    assert pdf.total() == pytest.approx(1.0)


def test_current_pdf_conserves_mass() -> None:
    params = _params(n=2, k=4.0)
    pdf = current_pdf_small_n(params, np.linspace(0.0, 20.0, 401))
    assert pdf.total() == pytest.approx(1.0 - pdf.truncation_mass, abs=1e-9)


def test_current_grid_must_increase() -> None:
    with pytest.raises(ParameterError):
        current_pdf_small_n(_params(), np.array([0.0, 1.0, 1.0]))


def test_mean_current_matches_sampling() -> None:
    params = _params(n=1, k=6.0, c=0.9)
    rng = np.random.default_rng(1)
    z1 = rng.poisson(6.0, 200_000).astype(float)
    z2 = rng.poisson(6.0, 200_000).astype(float)
    total = z1 + z2
    values = np.divide(0.9 * z1 * z2, total, out=np.zeros_like(total), where=total > 0)
    se = values.std() / np.sqrt(values.size)
    assert abs(mean_current_small_n(params) - values.mean()) <= 4 * se


def test_sf_tail_exponent() -> None:
    assert sf_flow_tail_exponent(2.5) == 4.0
    assert sf_flow_tail_exponent(3.0) == 5.0
    with pytest.raises(ParameterError):
        sf_flow_tail_exponent(2.0)


def test_convolve_power_matches_direct_convolution() -> None:
    mass = np.array([0.2, 0.5, 0.3])
    direct = np.convolve(np.convolve(mass, mass), mass)
    assert np.allclose(convolve_power(mass, 3), direct, atol=1e-12)


def test_sf_degree_sum_support_and_mean() -> None:
    params = TheoryParams(num_nodes=200, mean_degree=4.0, n=3, gamma=2.5, m=2)
    single = degree_sum_pdf_sf(params.with_n(1))
    triple = degree_sum_pdf_sf(params)
    assert triple.support[0] == 6
    assert triple.total() == pytest.approx(1.0)
    assert triple.mean() == pytest.approx(3 * single.mean(), rel=1e-8)
    flow = flow_pdf_sf(params)
    assert flow.support[0] == 6
    assert flow.total() == pytest.approx(1.0, abs=1e-9)


def test_sf_needs_gamma() -> None:
    with pytest.raises(ParameterError):
        degree_sum_pdf_sf(_params())


def test_intra_set_link_correction() -> None:
    assert intra_set_link_correction(_params(n=0))[0] == 1.0
    value, scale = intra_set_link_correction(TheoryParams(num_nodes=800, mean_degree=8.0, n=10))
    assert scale == pytest.approx(10.0)
    assert value == pytest.approx(math.exp(-1.0))
    limit = int(2 * math.sqrt(4096 / 8))
    for n in range(0, limit + 1, 5):
        params = _params(n=n)
        assert abs(intra_set_link_probability_exact(params) - intra_set_link_correction(params)[0]) <= 0.02


def test_fit_c_exact_recovery() -> None:
    z = np.arange(1, 21, dtype=float)
    points = [(a, b, 0.9 * a * b / (a + b)) for a, b in zip(z, z[::-1])]
    assert fit_c(points) == pytest.approx(0.9, abs=1e-12)


def test_fit_c_with_symmetric_noise() -> None:
    rng = np.random.default_rng(2)
    z1 = rng.integers(1, 20, 500).astype(float)
    z2 = rng.integers(1, 20, 500).astype(float)
    current = 0.8 * z1 * z2 / (z1 + z2) + rng.normal(0.0, 0.1, 500)
    assert fit_c(zip(z1, z2, current)) == pytest.approx(0.8, abs=0.02)


def test_fit_c_degenerate() -> None:
    with pytest.raises(FitError):
        fit_c([(1.0, 1.0, 0.5)] * 5)
    with pytest.raises(FitError):
        fit_c([(0.0, 0.0, 0.0)] * 12)
