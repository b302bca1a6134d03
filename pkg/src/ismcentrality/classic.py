"""Shortest-path centralities with unit edge lengths, and max-probability paths.

Closeness on disconnected graphs is normalised per component: a node's
score is ``r / sum of distances`` over the ``r`` nodes it can reach, and 0
when it reaches none. Betweenness is the raw pair-dependency sum, with each
unordered pair counted once on undirected graphs.
"""
from __future__ import annotations

import heapq
import math
from collections import deque

import numpy as np

from .graph import Graph
from .metrics import CentralityVector

__all__ = [
    "degree_centrality",
    "closeness_centrality",
    "betweenness_centrality",
    "prob_to_distance",
    "distance_graph",
    "max_probability_path",
    "STRUCTURAL_METRICS",
]

STRUCTURAL_METRICS = ("degree", "closeness", "betweenness")


def _need(g: Graph, k: int, metric: str):
    if len(g) < k:
        raise ValueError(f"{metric} needs at least {k} nodes")


def degree_centrality(g: Graph) -> CentralityVector:
    """Distinct neighbours (either direction) divided by N - 1."""
    _need(g, 2, "degree centrality")
    nbrs = g.neighbors
    values = np.array([len(nbrs[v]) for v in g.nodes], dtype=float) / (len(g) - 1)
    return CentralityVector("degree", g.nodes, values)


def _bfs_distances(succ, source):
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in succ[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def closeness_centrality(g: Graph) -> CentralityVector:
    _need(g, 2, "closeness centrality")
    succ = g.successors
    values = []
    for v in g.nodes:
        dist = _bfs_distances(succ, v)
        total = sum(dist.values())
        values.append((len(dist) - 1) / total if total > 0 else 0.0)
    return CentralityVector("closeness", g.nodes, np.array(values), note="component-normalized")


def betweenness_centrality(g: Graph) -> CentralityVector:
    """Brandes dependency accumulation over unit-length shortest paths."""
    _need(g, 3, "betweenness centrality")
    succ = g.successors
    score = dict.fromkeys(g.nodes, 0.0)
    for s in g.nodes:
        order = []
        preds: dict[int, list[int]] = {v: [] for v in g.nodes}
        sigma = dict.fromkeys(g.nodes, 0)
        sigma[s] = 1
        dist = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in succ[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = dict.fromkeys(g.nodes, 0.0)
        for w in reversed(order):
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                score[w] += delta[w]
    values = np.array([score[v] for v in g.nodes])
    if g.undirected:
        values /= 2.0
    return CentralityVector("betweenness", g.nodes, values)


def prob_to_distance(p: float) -> float:
    """Natural-log distance ``log(1/p)``; 0 for p = 1."""
    if not 0.0 < p <= 1.0:
        raise ValueError(f"probability must lie in (0, 1], got {p!r}")
    return -math.log(p)


def distance_graph(g: Graph) -> dict[tuple[int, int], float]:
    """Edge distances for every edge of positive probability."""
    return {e: prob_to_distance(p) for e, p in g.edges.items() if p > 0.0}


def max_probability_path(g: Graph, s: int, t: int) -> tuple[tuple[int, ...], float]:
    """Most probable simple path from ``s`` to ``t`` and its probability.

    Dijkstra over ``log(1/p)`` distances. Among equally distant paths the
    one with fewer edges wins, then the lexicographically smallest node
    sequence (so with all probabilities 1 the result is a shortest path).
    """
    if s == t:
        raise ValueError("source and target must differ")
    if s not in g or t not in g:
        raise KeyError(f"nodes {s}, {t} must both be in the graph")
    dist = distance_graph(g)
    succ = g.successors
    best = {s: (0.0, 0, (s,))}
    settled = set()
    heap = [(0.0, 0, (s,))]
    while heap:
        d, hops, path = heapq.heappop(heap)
        v = path[-1]
        if v in settled:
            continue
        settled.add(v)
        if v == t:
            prob = 1.0
            for a, b in zip(path, path[1:]):
                prob *= g.edges[(a, b)]
            return path, prob
        for u in succ[v]:
            if u in settled or (v, u) not in dist:
                continue
            cand = (d + dist[(v, u)], hops + 1, path + (u,))
            if u not in best or cand < best[u]:
                best[u] = cand
                heapq.heappush(heap, cand)
    raise ValueError(f"node {t} is unreachable from {s}")
