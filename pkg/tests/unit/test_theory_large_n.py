"""Unit tests for large-n theory: n_min, F1/F2, length-3 bounds."""

from __future__ import annotations

import math

import numpy as np
import pytest

from theory import (
    TheoryParams,
    f3_bounds,
    f3_components,
    large_n_components,
    mean_current_large_n,
    mean_f1_f2,
    mean_flow_large_n,
    n_min_pmf,
    n_min_pmf_poisson,
    two_core_fraction,
)
from tools.errors import ParameterError


def _params(size: int = 4096, k: float = 8.0, n: int = 10) -> TheoryParams:
    return TheoryParams(num_nodes=size, mean_degree=k, n=n)


def test_n_min_single_link_enumeration() -> None:
    p = 0.3
    pmf = n_min_pmf(1, p)
    # min over {0,1}^2 is 1 only when both links exist
    assert pmf.at(0) == pytest.approx(1 - p * p, abs=1e-15)
    assert pmf.at(1) == pytest.approx(p * p, abs=1e-15)


@pytest.mark.parametrize("n", [1, 7, 300])
def test_n_min_normalized(n: int) -> None:
    assert n_min_pmf(n, 0.01).total() == pytest.approx(1.0, abs=1e-12)


def test_n_min_poisson_limit() -> None:
    n, p = 2048, 8 / 4095
    binomial = n_min_pmf(n, p).mass
    poisson = n_min_pmf_poisson(n * p).mass
    size = max(binomial.size, poisson.size)
    diff = np.abs(np.pad(binomial, (0, size - binomial.size)) - np.pad(poisson, (0, size - poisson.size)))
    assert 0.5 * diff.sum() < 0.01


def test_n_min_rejects_bad_p() -> None:
    with pytest.raises(ParameterError):
        n_min_pmf(3, 1.0)


def test_f1_f2() -> None:
    f1, _ = mean_f1_f2(_params(n=10))
    assert f1 == pytest.approx(100 * 8 / 4095)
    _, f2_half = mean_f1_f2(_params(size=1024, n=512))
    assert f2_half == 0.0


def test_two_core_fraction() -> None:
    beta, x = two_core_fraction(2.0)
    assert beta == pytest.approx(1.5936, abs=1e-4)
    assert x == pytest.approx(0.4731, abs=1e-4)
    assert beta / 2.0 == pytest.approx(1 - math.exp(-beta), abs=1e-11)
    assert two_core_fraction(1.0) == (0.0, 0.0)


@pytest.mark.parametrize("size", [512, 1024, 4096])
@pytest.mark.parametrize("k", [4.0, 8.0, 16.0])
def test_f3_lower_below_upper(size: int, k: float) -> None:
    for n in (1, 4, 16, size // 8, size // 4, size // 2 - 2):
        lower, upper = f3_bounds(_params(size=size, k=k, n=n))
        assert 0.0 <= lower <= upper + 1e-12


def test_f3_vanishes_at_half() -> None:
    assert f3_bounds(_params(size=1024, n=512)) == (0.0, 0.0)


def test_f3_zero_for_subcritical_degree() -> None:
    comp = f3_components(_params(size=1024, k=0.8, n=100))
    assert comp.lower == 0.0 and comp.upper == 0.0


def test_f3_components_are_consistent() -> None:
    comp = f3_components(_params(size=1024, k=8.0, n=64))
    assert comp.intermediate_nodes == pytest.approx((1024 - 128) * comp.p_spare)
    assert comp.mean_spare >= 1.0
    assert comp.upper == pytest.approx(comp.intermediate_nodes * comp.expected_min_degree_spare)
    assert set(comp.to_dict()) >= {"lower", "upper", "beta", "two_core"}


def test_large_n_at_half_is_direct_links_only() -> None:
    params = _params(size=1024, n=512)
    assert mean_flow_large_n(params) == pytest.approx(512 * 512 * params.p)


def test_flow_dominates_current() -> None:
    for n in (1, 8, 64, 256, 500):
        params = _params(size=1024, n=n)
        assert mean_flow_large_n(params) >= mean_current_large_n(params)
        comp = large_n_components(params)
        assert mean_current_large_n(params) == pytest.approx(
            comp["f1"] + comp["f2"] / 2 + comp["f3_upper"] / 3
        )
