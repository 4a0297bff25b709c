"""Large-n theory: flow split by path length.

Length-1 paths are direct source-sink links. Length-2 paths run through an
intermediate node, which carries min(n_s, n_t) units when it has n_s links
to sources and n_t links to sinks. Intermediate nodes left with spare links
toward one side form a bipartite network whose matchings carry length-3
paths; its size is bounded from below by the 2-core and from above by the
per-node min of degree and spare links.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from typing import Any

import numpy as np
import scipy.optimize
import scipy.stats

from theory.models import Pdf, TheoryParams
from theory.small_n import flow_pdf_from_degree_sums, min_of_poissons_pdf
from tools.errors import ParameterError

logger = logging.getLogger(__name__)

BISECT_XTOL = 1e-12


def n_min_pmf(n: int, p: float) -> Pdf:
    """pmf of min(n_s, n_t) with n_s, n_t i.i.d. Binomial(n, p)."""
    if not 0 < p < 1:
        raise ParameterError("p must lie in (0, 1)", {"p": p})
    if n < 0:
        raise ParameterError("n must be non-negative", {"n": n})
    support = np.arange(n + 1)
    pb = Pdf(support, scipy.stats.binom.pmf(support, n, p))
    out = flow_pdf_from_degree_sums(pb)
    out.info = {"form": "binomial", "n": n, "p": p}
    return out


def n_min_pmf_poisson(np_: float) -> Pdf:
    """Poisson limit of ``n_min_pmf`` with mean link count np_."""
    if np_ < 0:
        raise ParameterError("np must be non-negative", {"np": np_})
    return min_of_poissons_pdf(np_)


def mean_f1_f2(params: TheoryParams) -> tuple[float, float]:
    """(F1, F2): n^2 p direct links and (N - 2n) E[n_min] two-hop paths."""
    n, p = params.n, params.p
    if n == 0:
        return 0.0, 0.0
    f1 = n * n * p
    f2 = (params.num_nodes - 2 * n) * n_min_pmf(n, p).mean()
    return f1, f2


def two_core_fraction(c: float) -> tuple[float, float]:
    """(beta, x) for a random graph of mean degree c.

    beta solves beta / c = 1 - exp(-beta); x = 1 - exp(-beta)(1 + beta) is
    the fraction of nodes in the 2-core. c <= 1 gives (0, 0).
    """
    if c <= 1.0:
        return 0.0, 0.0

    def fix_point(beta: float) -> float:
        return beta - c * (1.0 - math.exp(-beta))

    lo = 1e-9
    if fix_point(lo) >= 0:
        return 0.0, 0.0
    beta = float(scipy.optimize.bisect(fix_point, lo, c, xtol=BISECT_XTOL))
    return beta, 1.0 - math.exp(-beta) * (1.0 + beta)


@dataclass
class F3Components:
    """Intermediates of the length-3 flow bounds."""

    intermediate_nodes: float  # <|I|>, nodes with spare links toward the sources
    p_spare: float  # P(n_s > n_t)
    mean_spare: float  # <s> given s > 0
    bipartite_mean_degree: float
    beta: float
    two_core: float
    expected_min_degree_spare: float  # E[min(D, S)]
    lower: float
    upper: float

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def _spare_pmf(pb: np.ndarray) -> np.ndarray:
    """P(n_s - n_t = i), i = 0..n, from the binomial pmf ``pb``."""
    n = pb.size - 1
    out = np.empty(n + 1)
    for i in range(n + 1):
        out[i] = float(pb[i:] @ pb[: n + 1 - i])
    return out


def f3_components(params: TheoryParams) -> F3Components:
    n, p, size = params.n, params.p, params.num_nodes
    zero = F3Components(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    if n == 0:
        return zero
    pb = scipy.stats.binom.pmf(np.arange(n + 1), n, p)
    p_spare = max(0.0, (1.0 - float(pb @ pb)) / 2.0)
    intermediate = (size - 2 * n) * p_spare
    if p_spare == 0.0 or intermediate == 0.0:
        return zero
    spare = _spare_pmf(pb)[1:] / p_spare
    spare_values = np.arange(1, n + 1)
    mean_spare = float(spare_values @ spare)
    partner_count = int(round(intermediate))
    c = partner_count * p
    if params.mean_degree <= 1.0:
        beta, x = 0.0, 0.0
    else:
        beta, x = two_core_fraction(c)
    # E[min(D, S)] = sum_k P(D >= k) P(S >= k)
    ks = spare_values
    d_tail = scipy.stats.binom.sf(ks - 1, partner_count, p)
    s_tail = np.cumsum(spare[::-1])[::-1]
    expected_min = float(d_tail @ s_tail)
    lower = x * intermediate
    upper = intermediate * expected_min
    if params.mean_degree <= 1.0:
        lower = upper = 0.0
    return F3Components(
        intermediate_nodes=intermediate,
        p_spare=p_spare,
        mean_spare=mean_spare,
        bipartite_mean_degree=c,
        beta=beta,
        two_core=x,
        expected_min_degree_spare=expected_min,
        lower=lower,
        upper=upper,
    )


def f3_bounds(params: TheoryParams) -> tuple[float, float]:
    """(lower, upper) bounds on the mean flow through length-3 paths."""
    if 2 * params.n >= params.num_nodes:
        return 0.0, 0.0
    comp = f3_components(params)
    return comp.lower, comp.upper


def large_n_components(params: TheoryParams) -> dict[str, float]:
    f1, f2 = mean_f1_f2(params)
    f3_lower, f3_upper = f3_bounds(params)
    return {"f1": f1, "f2": f2, "f3_lower": f3_lower, "f3_upper": f3_upper}


def mean_flow_large_n(params: TheoryParams) -> float:
    """F1 + F2 + F3 (upper bound); higher lengths neglected."""
    comp = large_n_components(params)
    return comp["f1"] + comp["f2"] + comp["f3_upper"]


def mean_current_large_n(params: TheoryParams) -> float:
    """F1 + F2/2 + F3/3: a path of length l is a resistance l."""
    comp = large_n_components(params)
    return comp["f1"] + comp["f2"] / 2.0 + comp["f3_upper"] / 3.0
