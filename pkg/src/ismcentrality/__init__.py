"""Influence-spreading centralities over walks and cycles.

Exact first-arrival influence probabilities, the centralities derived from
them (out-, in- and ISM betweenness), the classic shortest-path
centralities, and helpers for edge-probability sweeps and correlation
tables.
"""
from importlib import resources

from ._backend import BACKEND
from .analysis import (
    DEFAULT_GRID,
    RankTable,
    SweepResult,
    UndefinedCorrelation,
    correlation_table,
    parse_grid,
    pearson,
    rank,
    sweep,
)
from .classic import (
    betweenness_centrality,
    closeness_centrality,
    degree_centrality,
    max_probability_path,
    prob_to_distance,
)
from .generators import GeneratorSpec, generate, generate_ba, generate_er, generate_ws
from .graph import (
    EdgeListError,
    Graph,
    connected_components,
    parse_edge_list,
    read_edge_list,
    remove_node,
    serialize_edge_list,
)
from .metrics import CentralityVector, in_centrality, ism_betweenness, out_centrality
from .reference import Walk, enumerate_walks, spread_probability_reference
from .spread import InfluenceMatrix, SpreadConfig, cohesion, combine_pair, influence_matrix, spread_probability

FIXTURES = ("kite", "chain10", "square4", "square5", "dutch32", "example4")


def load_fixture(name: str) -> Graph:
    """Bundled undirected network by name (see ``FIXTURES``)."""
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}")
    text = resources.files(__name__).joinpath("fixtures", f"{name}.edges").read_text("utf-8")
    return parse_edge_list(text, undirected=True)
