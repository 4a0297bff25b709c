"""Graph generation, loading and terminal sampling.

- models: Graph, TerminalSet, ConfigModelReport
- generators: gen_er, gen_sf_config
- edgelist: load_edge_list, save_edge_list, format_edge_list
- terminals: sample_terminals, degree_sum
- stats: degree_histogram, degree_exponent_estimate, giant_component_fraction
"""

from netgen.edgelist import format_edge_list, load_edge_list, save_edge_list
from netgen.generators import gen_er, gen_sf_config, power_law_pmf, sample_power_law_degrees
from netgen.models import ConfigModelReport, Graph, TerminalMode, TerminalSet
from netgen.stats import (
    component_labels,
    degree_exponent_estimate,
    degree_histogram,
    giant_component_fraction,
)
from netgen.terminals import degree_sum, sample_terminals

__all__ = [
    "Graph",
    "TerminalSet",
    "TerminalMode",
    "ConfigModelReport",
    "gen_er",
    "gen_sf_config",
    "power_law_pmf",
    "sample_power_law_degrees",
    "load_edge_list",
    "save_edge_list",
    "format_edge_list",
    "sample_terminals",
    "degree_sum",
    "degree_histogram",
    "degree_exponent_estimate",
    "giant_component_fraction",
    "component_labels",
]
