import itertools
import math
import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ismcentrality import (
    Graph,
    betweenness_centrality,
    closeness_centrality,
    degree_centrality,
    max_probability_path,
    parse_edge_list,
    prob_to_distance,
)
from ismcentrality.classic import distance_graph


def _to_nx(g):
    h = nx.Graph() if g.undirected else nx.DiGraph()
    h.add_nodes_from(g.nodes)
    h.add_edges_from(g.edges)
    return h


@st.composite
def topologies(draw, undirected=None):
    n = draw(st.integers(3, 9))
    undirected = draw(st.booleans()) if undirected is None else undirected
    pairs = list(itertools.combinations(range(n), 2)) if undirected else list(itertools.permutations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=3 * n))
    edges = {}
    for u, v in chosen:
        edges[(u, v)] = 1.0
        if undirected:
            edges[(v, u)] = 1.0
    return Graph(range(n), edges, undirected=undirected)


def test_kite_structural(kite):
    deg = degree_centrality(kite)
    assert deg.as_dict()[4] == pytest.approx(6 / 9)
    assert max(deg.as_dict(), key=deg.as_dict().get) == 4
    clo = closeness_centrality(kite).as_dict()
    assert clo[6] == clo[7] == pytest.approx(9 / 14)
    assert all(clo[v] < clo[6] for v in kite.nodes if v not in (6, 7))
    bet = betweenness_centrality(kite).as_dict()
    assert bet[8] == pytest.approx(14.0)
    assert bet[3] == bet[5] == bet[10] == 0.0


@settings(max_examples=80, deadline=None)
@given(topologies())
def test_betweenness_matches_networkx(g):
    ours = betweenness_centrality(g).as_dict()
    theirs = nx.betweenness_centrality(_to_nx(g), normalized=False)
    for v in g.nodes:
        assert ours[v] == pytest.approx(theirs[v], abs=1e-9)


def _sigma_oracle(g):
    # count shortest paths through each node by enumerating all of them
    h = _to_nx(g)
    score = dict.fromkeys(g.nodes, 0.0)
    for s, t in itertools.permutations(g.nodes, 2):
        if g.undirected and s > t:
            continue
        if not nx.has_path(h, s, t):
            continue
        paths = list(nx.all_shortest_paths(h, s, t))
        for v in g.nodes:
            if v not in (s, t):
                score[v] += sum(v in p for p in paths) / len(paths)
    return score


@settings(max_examples=40, deadline=None)
@given(topologies())
def test_betweenness_matches_path_counting(g):
    ours = betweenness_centrality(g).as_dict()
    oracle = _sigma_oracle(g)
    for v in g.nodes:
        assert ours[v] == pytest.approx(oracle[v], abs=1e-9)


@settings(max_examples=80, deadline=None)
@given(topologies())
def test_closeness_matches_networkx(g):
    ours = closeness_centrality(g).as_dict()
    # networkx measures incoming distance; reverse to get the outgoing convention
    h = _to_nx(g)
    h = h.reverse() if not g.undirected else h
    theirs = nx.closeness_centrality(h, wf_improved=False)
    for v in g.nodes:
        assert ours[v] == pytest.approx(theirs[v], abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(topologies(undirected=True), st.randoms(use_true_random=False))
def test_structural_metrics_follow_relabelling(g, rnd):
    labels = list(range(100, 100 + len(g)))
    rnd.shuffle(labels)
    f = dict(zip(g.nodes, labels))
    h = Graph(labels, {(f[u], f[v]): p for (u, v), p in g.edges.items()}, undirected=True)
    for metric in (degree_centrality, closeness_centrality, betweenness_centrality):
        a, b = metric(g).as_dict(), metric(h).as_dict()
        for v in g.nodes:
            assert a[v] == pytest.approx(b[f[v]], abs=1e-12)


def test_small_graph_errors():
    g = parse_edge_list("1 2")
    with pytest.raises(ValueError):
        betweenness_centrality(g)
    with pytest.raises(ValueError):
        degree_centrality(parse_edge_list("1"))


def test_isolated_node_closeness_zero():
    g = parse_edge_list("1 2\n3")
    assert closeness_centrality(g).as_dict()[3] == 0.0


# -- max-probability path -----------------------------------------------------

def test_prob_to_distance():
    assert prob_to_distance(1.0) == 0.0
    assert prob_to_distance(math.exp(-2)) == pytest.approx(2.0)
    for bad in (0.0, -0.5, 1.5):
        with pytest.raises(ValueError):
            prob_to_distance(bad)


def test_distance_graph_skips_zero_edges():
    g = Graph([1, 2, 3], {(1, 2): 0.0, (2, 3): 0.5})
    assert distance_graph(g) == {(2, 3): pytest.approx(math.log(2))}


def test_max_probability_prefers_reliable_detour():
    g = Graph([1, 2, 3], {(1, 3): 0.2, (1, 2): 0.9, (2, 3): 0.9})
    assert max_probability_path(g, 1, 3) == ((1, 2, 3), pytest.approx(0.81))


def test_max_probability_unreachable():
    g = Graph([1, 2, 3], {(1, 2): 0.5, (3, 2): 0.5})
    with pytest.raises(ValueError):
        max_probability_path(g, 1, 3)
    with pytest.raises(ValueError):
        max_probability_path(Graph([1, 2], {(1, 2): 0.0}), 1, 2)


def best_simple_path(g, s, t):
    """Exhaustive oracle: every simple path, highest product, then smallest sequence."""
    best = None
    succ = g.successors

    def extend(path, prob):
        nonlocal best
        v = path[-1]
        if v == t:
            key = (-prob, path)
            if best is None or key < best:
                best = key
            return
        for u in succ[v]:
            if u not in path and g.edges[(v, u)] > 0:
                extend(path + (u,), prob * g.edges[(v, u)])

    extend((s,), 1.0)
    return None if best is None else (best[1], -best[0])


def random_probability_graph(rnd, max_nodes=7):
    n = rnd.randint(2, max_nodes)
    edges = {}
    for u, v in itertools.permutations(range(n), 2):
        if rnd.random() < 0.4:
            edges[(u, v)] = rnd.choice([rnd.random(), rnd.random(), 0.5, 1.0])
    return Graph(range(n), edges)


def check_path_against_oracle(g, s, t):
    want = best_simple_path(g, s, t)
    if want is None:
        with pytest.raises(ValueError):
            max_probability_path(g, s, t)
        return True
    path, prob = max_probability_path(g, s, t)
    if math.isclose(prob, want[1], rel_tol=1e-12):
        return True
    return False


def test_max_probability_path_small_random():
    rnd = random.Random(5)
    for _ in range(100):
        g = random_probability_graph(rnd, 6)
        s, t = rnd.sample(g.nodes, 2)
        assert check_path_against_oracle(g, s, t)


def test_uniform_probability_hops_are_bfs_lengths(kite):
    h = _to_nx(kite)
    g = kite.with_edge_probability(0.3)
    for s, t in itertools.permutations(kite.nodes, 2):
        path, prob = max_probability_path(g, s, t)
        hops = len(path) - 1
        assert hops == nx.shortest_path_length(h, s, t)
        assert prob == pytest.approx(0.3 ** hops)
