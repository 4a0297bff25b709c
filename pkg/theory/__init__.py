"""Analytical predictions for flow, current and multi-commodity flow.

- models: TheoryParams, Pdf
- small_n: degree-sum and transport pmfs, single-pair current law fit
- large_n: path-length decomposition F1, F2, F3 bounds
- mcflow: mu(k), effective-degree recursion, saturation bounds
- export: theory curves as DataFrames / CSV
"""

from theory.export import THEORY_KINDS, TheoryKind, theory_curve, write_theory_csv
from theory.large_n import (
    F3Components,
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
from theory.mcflow import (
    effective_degree_trajectory,
    mc_flow_pdf_er,
    mc_flow_small_n,
    mc_flow_theory,
    mu,
    n_star_bounds,
)
from theory.models import Pdf, TheoryParams
from theory.small_n import (
    current_pdf_small_n,
    degree_pmf_sf,
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
    min_of_poissons_pdf,
    poisson_pdf,
    sf_flow_tail_exponent,
)

__all__ = [
    "TheoryParams",
    "Pdf",
    "poisson_pdf",
    "min_of_poissons_pdf",
    "degree_sum_pdf_er",
    "flow_pdf_er",
    "flow_pdf_from_degree_sums",
    "mean_flow_small_n",
    "mean_flow_per_node_small_n",
    "current_pdf_small_n",
    "mean_current_small_n",
    "sf_flow_tail_exponent",
    "degree_pmf_sf",
    "degree_sum_pdf_sf",
    "flow_pdf_sf",
    "intra_set_link_correction",
    "intra_set_link_probability_exact",
    "fit_c",
    "n_min_pmf",
    "n_min_pmf_poisson",
    "mean_f1_f2",
    "two_core_fraction",
    "F3Components",
    "f3_components",
    "f3_bounds",
    "large_n_components",
    "mean_flow_large_n",
    "mean_current_large_n",
    "mu",
    "effective_degree_trajectory",
    "mc_flow_theory",
    "n_star_bounds",
    "mc_flow_small_n",
    "mc_flow_pdf_er",
    "TheoryKind",
    "THEORY_KINDS",
    "theory_curve",
    "write_theory_csv",
]
