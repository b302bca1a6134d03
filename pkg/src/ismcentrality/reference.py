"""Explicit walk enumeration and pairwise walk merging.

This is the slow, literal form of the spread computation: list every
admissible walk, sort the list, then merge walks sharing a longest common
prefix of c edges for c = l_max down to 0. It exists to check the fast
kernels and to print walk listings; its cost grows exponentially with
``l_max``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .graph import Graph
from .spread import SpreadConfig, combine_pair

__all__ = ["Walk", "WalkLimitExceeded", "iter_walks", "enumerate_walks", "spread_probability_reference"]


class WalkLimitExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Walk:
    nodes: tuple[int, ...]
    probability: float
    # prefix_probabilities[c] is the probability of the first c edges
    prefix_probabilities: tuple[float, ...]

    @property
    def length(self) -> int:
        return len(self.nodes) - 1


def _step_factors(g: Graph, t: int, cfg: SpreadConfig):
    weights = g.node_weights

    def factor(u: int, v: int) -> float:
        p = g.edges[(u, v)] if cfg.edge_probability is None else cfg.edge_probability
        if v != t or cfg.apply_target_weight:
            p *= weights[v]
        return p

    return factor


def iter_walks(g: Graph, s: int, t: int, cfg: SpreadConfig) -> Iterator[Walk]:
    """Walks from ``s`` to ``t`` with at most ``l_max`` edges, ``t`` only at the end.

    Yields in depth-first order over sorted successors.
    """
    if s == t:
        raise ValueError("source and target must differ")
    if s not in g or t not in g:
        raise KeyError(f"nodes {s}, {t} must both be in the graph")
    succ = g.successors
    factor = _step_factors(g, t, cfg)
    path = [s]
    probs = [1.0]

    def extend() -> Iterator[Walk]:
        v = path[-1]
        if len(path) - 1 >= cfg.l_max:
            return
        for u in succ[v]:
            path.append(u)
            probs.append(probs[-1] * factor(v, u))
            if u == t:
                yield Walk(tuple(path), probs[-1], tuple(probs))
            else:
                yield from extend()
            path.pop()
            probs.pop()

    yield from extend()


def _walk_order(w: Walk):
    return (len(w.nodes), w.nodes)


def enumerate_walks(g: Graph, s: int, t: int, cfg: SpreadConfig = SpreadConfig(),
                    limit: int | None = None) -> list[Walk]:
    """All admissible walks, shorter first, equal lengths by node sequence.

    Raises :class:`WalkLimitExceeded` once more than ``limit`` walks exist.
    """
    walks = []
    for w in iter_walks(g, s, t, cfg):
        walks.append(w)
        if limit is not None and len(walks) > limit:
            raise WalkLimitExceeded(f"more than {limit} walks from {s} to {t}")
    walks.sort(key=_walk_order)
    return walks


def spread_probability_reference(g: Graph, s: int, t: int, cfg: SpreadConfig = SpreadConfig(),
                                 rng: random.Random | None = None) -> float:
    """Merge all walks from ``s`` to ``t`` into one probability.

    For c = l_max .. 0, walks whose longest common prefix has exactly c edges
    are merged with :func:`combine_pair`; the earlier walk in the sorted
    list absorbs the later one. With ``rng`` the merge order inside each
    group of walks sharing a c-edge prefix is shuffled.
    """
    # zero-probability walks add nothing and would make some prefixes zero
    walks = [w for w in enumerate_walks(g, s, t, cfg) if w.probability > 0.0]
    if not walks:
        return 0.0
    live = [[w, w.probability] for w in walks]
    for c in range(cfg.l_max, -1, -1):
        if not any(w.length >= c for w, _ in live):
            continue
        groups: dict[tuple[int, ...], list[list]] = {}
        for item in live:
            w = item[0]
            if w.length > c:
                groups.setdefault(w.nodes[: c + 1], []).append(item)
        removed = set()
        for members in groups.values():
            if len(members) < 2:
                continue
            if rng is not None:
                members = members[:]
                rng.shuffle(members)
            head = members[0]
            for other in members[1:]:
                # anything sharing c+1 edges was merged in the previous round
                assert head[0].nodes[c + 1] != other[0].nodes[c + 1]
                p3 = head[0].prefix_probabilities[c]
                head[1] = combine_pair(head[1], other[1], p3)
                removed.add(id(other))
        live = [item for item in live if id(item) not in removed]
    assert len(live) == 1
    return live[0][1]
