import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ismcentrality import (
    Graph,
    InfluenceMatrix,
    SpreadConfig,
    cohesion,
    combine_pair,
    enumerate_walks,
    influence_matrix,
    load_fixture,
    parse_edge_list,
    spread_probability,
    spread_probability_reference,
)
from ismcentrality._backend import KERNELS, first_arrival_columns
from ismcentrality.reference import WalkLimitExceeded


# -- combine_pair -------------------------------------------------------------

def test_combine_pair_hand_values():
    assert combine_pair(0.0625, 0.03125, 0.125) == 0.078125
    assert combine_pair(0.5, 0.5, 1.0) == 0.75
    assert combine_pair(0.0, 0.3, 0.5) == 0.3


@pytest.mark.parametrize("args", [(0.5, 0.5, 0.0), (0.5, 0.5, 1.5), (0.6, 0.1, 0.5), (-0.1, 0.1, 0.5)])
def test_combine_pair_rejects(args):
    with pytest.raises(ValueError):
        combine_pair(*args)


@given(st.floats(0.01, 1), st.floats(0, 1), st.floats(0, 1))
def test_combine_pair_is_a_union_probability(p3, a, b):
    p1, p2 = a * p3, b * p3
    r = combine_pair(p1, p2, p3)
    assert max(p1, p2) - 1e-15 <= r <= min(p3, p1 + p2) + 1e-15
    assert r == pytest.approx(combine_pair(p2, p1, p3), abs=1e-15)


# -- worked example -----------------------------------------------------------

def test_example4_walk_listing(example4):
    cfg = SpreadConfig(5, 0.5)
    forward = [w.nodes for w in enumerate_walks(example4, 1, 4, cfg)]
    assert forward == [(1, 3, 4), (1, 2, 3, 4),
                       (1, 2, 1, 3, 4), (1, 3, 1, 3, 4), (1, 3, 2, 3, 4),
                       (1, 2, 1, 2, 3, 4), (1, 2, 3, 1, 3, 4), (1, 2, 3, 2, 3, 4),
                       (1, 3, 1, 2, 3, 4), (1, 3, 2, 1, 3, 4)]
    assert forward == sorted(forward, key=lambda w: (len(w), w))
    assert all(w.count(4) == 1 and w[-1] == 4 for w in forward)
    backward = [w.nodes for w in enumerate_walks(example4, 4, 1, cfg)]
    assert backward == [(4, 3, 1), (4, 3, 2, 1), (4, 3, 2, 3, 1), (4, 3, 4, 3, 1),
                        (4, 3, 2, 3, 2, 1), (4, 3, 4, 3, 2, 1)]


def test_example4_values(example4):
    cfg = SpreadConfig(5, 0.5)
    assert spread_probability(example4, 1, 4, cfg) == pytest.approx(0.472, abs=1e-3)
    assert spread_probability(example4, 4, 1, cfg) == pytest.approx(0.358, abs=1e-3)
    # explicit 0.5 weights in the fixture give the same answer without override
    assert spread_probability(example4, 4, 1, SpreadConfig(5)) == spread_probability(example4, 4, 1, cfg)


def test_path_of_three_by_hand():
    # 1 -> 3 on the path 1-2-3: walks 1-2-3, 1-2-1-2-3, 1-2-1-2-1-2-3 (l_max 5 allows two).
    # merging their tails gives q^2 (1 + q^2 (1 - q^2)) with q = 0.5
    g = parse_edge_list("1 2\n2 3")
    cfg = SpreadConfig(5, 0.5)
    assert spread_probability(g, 1, 3, cfg) == 0.28125
    assert spread_probability_reference(g, 1, 3, cfg) == 0.28125


def test_walk_cap():
    g = load_fixture("kite")
    with pytest.raises(WalkLimitExceeded):
        enumerate_walks(g, 1, 10, SpreadConfig(12), limit=1000)


def test_disconnected_pair_is_zero():
    g = parse_edge_list("1 2\n3 4")
    assert spread_probability(g, 1, 4) == 0.0
    assert spread_probability_reference(g, 1, 4) == 0.0


def test_bad_arguments():
    g = parse_edge_list("1 2")
    with pytest.raises(ValueError):
        spread_probability(g, 1, 1)
    with pytest.raises(KeyError):
        spread_probability(g, 1, 9)
    with pytest.raises(ValueError):
        SpreadConfig(-1)
    with pytest.raises(ValueError):
        SpreadConfig(3, 1.5)


# -- kernel vs literal merge --------------------------------------------------

@st.composite
def small_graphs(draw, max_nodes=5, max_edges=7):
    n = draw(st.integers(2, max_nodes))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=max_edges, unique=True))
    prob = st.floats(0.0, 1.0, allow_nan=False)
    edges = {e: draw(prob) for e in chosen}
    weights = {v: draw(st.floats(0.2, 1.0)) for v in range(n)}
    return Graph(range(n), edges, weights)


@settings(max_examples=150, deadline=None)
@given(small_graphs(), st.integers(0, 5), st.booleans(), st.data())
def test_kernels_match_literal_merge(g, l_max, target_weight, data):
    s, t = data.draw(st.sampled_from([(a, b) for a in g.nodes for b in g.nodes if a != b]))
    cfg = SpreadConfig(l_max, apply_target_weight=target_weight)
    expected = spread_probability_reference(g, s, t, cfg)
    for backend in KERNELS:
        got = first_arrival_columns(*g.csr(), np.array([t]), l_max, target_weight, backend=backend)
        assert got[s, 0] == pytest.approx(expected, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(small_graphs(max_nodes=4, max_edges=6), st.integers(0, 5), st.integers(0, 2**32 - 1))
def test_merge_order_does_not_matter(g, l_max, seed):
    cfg = SpreadConfig(l_max)
    rng = random.Random(seed)
    for s in g.nodes:
        for t in g.nodes:
            if s != t:
                a = spread_probability_reference(g, s, t, cfg)
                b = spread_probability_reference(g, s, t, cfg, rng=rng)
                assert a == pytest.approx(b, abs=1e-12)


def test_backends_agree_on_generated_graph():
    from ismcentrality import GeneratorSpec, generate
    g = generate(GeneratorSpec("BA", 300, m=3, seed=7))
    for p in (0.1, 0.6, 1.0):
        cfg = SpreadConfig(20, p)
        a = influence_matrix(g, cfg, backend="python").values
        b = influence_matrix(g, cfg, backend="cython").values if "cython" in KERNELS else a
        np.testing.assert_allclose(a, b, rtol=0, atol=1e-12)


def test_thread_count_does_not_change_results():
    if "cython" not in KERNELS:
        pytest.skip("compiled kernel unavailable")
    g = load_fixture("dutch32")
    cfg = SpreadConfig(20, 0.4)
    one = influence_matrix(g, cfg, backend="cython", threads=1).values
    four = influence_matrix(g, cfg, backend="cython", threads=4).values
    assert np.array_equal(one, four)


# -- monotonicity and symmetry -----------------------------------------------

@settings(max_examples=50, deadline=None)
@given(small_graphs(), st.integers(0, 8))
def test_monotone_in_budget(g, l_max):
    a = influence_matrix(g, SpreadConfig(l_max)).values
    b = influence_matrix(g, SpreadConfig(l_max + 1)).values
    assert np.all(b >= a - 1e-15)
    assert np.all((a >= 0) & (a <= 1))


@settings(max_examples=50, deadline=None)
@given(small_graphs(), st.floats(0, 1), st.floats(0, 1))
def test_monotone_in_edge_probability(g, p, q):
    lo, hi = sorted((p, q))
    a = influence_matrix(g, SpreadConfig(10, lo)).values
    b = influence_matrix(g, SpreadConfig(10, hi)).values
    assert np.all(b >= a - 1e-15)


@settings(max_examples=50, deadline=None)
@given(small_graphs(), st.data())
def test_adding_an_edge_never_lowers_spread(g, data):
    missing = [(u, v) for u in g.nodes for v in g.nodes if u != v and (u, v) not in g.edges]
    if not missing:
        return
    e = data.draw(st.sampled_from(missing))
    bigger = Graph(g.nodes, {**g.edges, e: data.draw(st.floats(0, 1))}, g.node_weights)
    a = influence_matrix(g, SpreadConfig(6)).values
    b = influence_matrix(bigger, SpreadConfig(6)).values
    assert np.all(b >= a - 1e-15)


@settings(max_examples=40, deadline=None)
@given(small_graphs(), st.permutations(range(5)))
def test_relabelling_permutes_the_matrix(g, perm):
    mapping = {v: 10 + perm[v] for v in g.nodes}
    h = Graph([mapping[v] for v in g.nodes], {(mapping[u], mapping[v]): p for (u, v), p in g.edges.items()},
              {mapping[v]: w for v, w in g.node_weights.items()})
    a = influence_matrix(g, SpreadConfig(7))
    b = influence_matrix(h, SpreadConfig(7))
    for s in g.nodes:
        for t in g.nodes:
            assert a[s, t] == pytest.approx(b[mapping[s], mapping[t]], abs=1e-14)


def test_identity_at_zero_probability_or_budget(kite):
    n = len(kite)
    assert np.array_equal(influence_matrix(kite, SpreadConfig(20, 0.0)).values, np.eye(n))
    assert np.array_equal(influence_matrix(kite, SpreadConfig(0, 0.7)).values, np.eye(n))


def test_undirected_symmetry_of_square():
    g = load_fixture("square4")
    m = influence_matrix(g, SpreadConfig(20, 0.3)).values
    np.testing.assert_allclose(m, m.T, atol=1e-15)
    # ring 1-2-3-4: every adjacent pair alike, both opposite pairs alike
    adjacent = [m[0, 1], m[1, 2], m[2, 3], m[3, 0]]
    assert np.ptp(adjacent) < 1e-15
    assert abs(m[0, 2] - m[1, 3]) < 1e-15


# -- matrix container and cohesion -------------------------------------------

def test_matrix_round_trips(kite):
    m = influence_matrix(kite, SpreadConfig(20, 0.35))
    c = InfluenceMatrix.from_csv(m.to_csv(), m.config)
    assert c.nodes == m.nodes and np.array_equal(c.values, m.values)
    j = InfluenceMatrix.from_json(m.to_json())
    assert j.config == m.config and np.array_equal(j.values, m.values)


def test_cohesion_values():
    assert cohesion(np.eye(3)) == 0.0
    assert cohesion(np.ones((3, 3))) == 6.0
    g = parse_edge_list("1 2")
    assert cohesion(influence_matrix(g, SpreadConfig(20, 0.4))) == pytest.approx(0.8)


def test_unknown_backend():
    with pytest.raises(ValueError, match="not available"):
        influence_matrix(load_fixture("square4"), SpreadConfig(3), backend="fortran")
