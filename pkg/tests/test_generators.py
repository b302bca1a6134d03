import numpy as np
import pytest

from ismcentrality import GeneratorSpec, connected_components, generate, serialize_edge_list


def _undirected_count(g):
    return len(g.edges) // 2


def _is_simple_undirected(g):
    return g.undirected and all((v, u) in g.edges and u != v for u, v in g.edges)


def test_spec_parse():
    assert GeneratorSpec.parse("ER:n=1000,p=0.01", seed=3) == GeneratorSpec("ER", 1000, p=0.01, seed=3)
    assert GeneratorSpec.parse("ws:n=20,k=4,p=0.5") == GeneratorSpec("WS", 20, p=0.5, k=4)
    assert GeneratorSpec.parse("BA:n=50,m=2,seed=9").seed == 9


@pytest.mark.parametrize("text", ["XX:n=3", "ER:p=0.1", "ER:n=10,p=2", "WS:n=10,k=3,p=0.1",
                                  "BA:n=5,m=5", "ER:n=10,q=1", "ER:n=10,p"])
def test_spec_rejects(text):
    with pytest.raises(ValueError):
        GeneratorSpec.parse(text)


@pytest.mark.parametrize("text", ["ER:n=60,p=0.1", "WS:n=60,k=6,p=0.3", "BA:n=60,m=3"])
def test_same_seed_same_graph(text):
    a = generate(GeneratorSpec.parse(text, seed=11))
    b = generate(GeneratorSpec.parse(text, seed=11))
    assert serialize_edge_list(a) == serialize_edge_list(b)
    assert _is_simple_undirected(a)
    assert a.nodes == tuple(range(60))
    assert set(a.edges.values()) == {1.0}


def test_different_seeds_differ():
    a = generate(GeneratorSpec("ER", 100, p=0.1, seed=1))
    b = generate(GeneratorSpec("ER", 100, p=0.1, seed=2))
    assert a != b


def test_er_extremes():
    assert not generate(GeneratorSpec("ER", 30, p=0.0)).edges
    assert _undirected_count(generate(GeneratorSpec("ER", 30, p=1.0))) == 435


def test_ws_without_rewiring_is_ring():
    g = generate(GeneratorSpec("WS", 12, k=4, p=0.0, seed=5))
    assert set(g.undirected_edges()) == {tuple(sorted((i, (i + j) % 12))) for i in range(12) for j in (1, 2)}


def test_ws_rewiring_keeps_edge_count():
    for seed in range(5):
        g = generate(GeneratorSpec("WS", 200, k=6, p=0.5, seed=seed))
        assert _undirected_count(g) == 600
        assert _is_simple_undirected(g)


def test_ws_full_rewiring_randomises():
    g = generate(GeneratorSpec("WS", 200, k=4, p=1.0, seed=1))
    ring = {tuple(sorted((i, (i + j) % 200))) for i in range(200) for j in (1, 2)}
    assert len(ring & set(g.undirected_edges())) < 40


def test_ba_small():
    g = generate(GeneratorSpec("BA", 10, m=2, seed=0))
    assert _undirected_count(g) == 2 * 8
    assert len(connected_components(g)) == 1
    degrees = [len(g.neighbors[v]) for v in g.nodes]
    assert min(degrees[2:]) >= 2


def test_ba_degree_tail():
    g = generate(GeneratorSpec("BA", 2000, m=3, seed=4))
    degrees = np.array([len(g.neighbors[v]) for v in g.nodes])
    assert degrees.max() > 40  # hubs emerge; an ER graph of equal density tops out near 15
