"""Seeded random topologies: Erdos-Renyi, Watts-Strogatz, Barabasi-Albert.

All randomness comes from ``numpy.random.Generator(numpy.random.PCG64(seed))``.
PCG64 and the Generator methods used here (``random``, ``integers``) are
specified bit-for-bit by numpy and do not depend on the platform, so a seed
fully determines the output for a given numpy major version.

Generators return undirected topologies with every edge probability 1.0;
the analysis code overrides edge probabilities per experiment. Nodes are
labelled ``0 .. n-1``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph

__all__ = ["GeneratorSpec", "generate", "generate_er", "generate_ws", "generate_ba"]

MODELS = ("ER", "WS", "BA")


@dataclass(frozen=True)
class GeneratorSpec:
    model: str
    n: int
    p: float = 0.0
    k: int = 0
    m: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}; expected one of {MODELS}")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if self.model == "WS" and (self.k % 2 or not 0 < self.k < self.n):
            raise ValueError("WS needs an even k with 0 < k < n")
        if self.model == "BA" and not 1 <= self.m < self.n:
            raise ValueError("BA needs 1 <= m < n")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @classmethod
    def parse(cls, text: str, seed: int = 0) -> "GeneratorSpec":
        """Parse ``"ER:n=1000,p=0.01"``, ``"WS:n=100,k=10,p=0.5"``, ``"BA:n=1000,m=5"``."""
        model, _, rest = text.partition(":")
        kwargs: dict = {"seed": seed}
        for item in filter(None, rest.split(",")):
            key, eq, value = item.partition("=")
            key = key.strip()
            if not eq or key not in ("n", "p", "k", "m", "seed"):
                raise ValueError(f"bad generator parameter {item!r}")
            kwargs[key] = float(value) if key == "p" else int(value)
        if "n" not in kwargs:
            raise ValueError("generator spec needs n=")
        return cls(model.strip().upper(), **kwargs)


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _topology(n: int, pairs) -> Graph:
    edges = {}
    for u, v in pairs:
        edges[(u, v)] = 1.0
        edges[(v, u)] = 1.0
    return Graph(range(n), edges, undirected=True)


def generate_er(spec: GeneratorSpec) -> Graph:
    """G(n, p): every unordered pair independently with probability p.

    Pairs are visited as (0,1), (0,2), ..., (0,n-1), (1,2), ... with one
    uniform draw each.
    """
    n = spec.n
    iu, ju = np.triu_indices(n, k=1)
    keep = _rng(spec.seed).random(iu.size) < spec.p
    return _topology(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def generate_ws(spec: GeneratorSpec) -> Graph:
    """Watts-Strogatz ring with single-pass rewiring.

    Edges ``(i, i+j mod n)`` are scanned for i = 0..n-1 and j = 1..k/2. Each is
    rewired with probability p by replacing the far endpoint with a node drawn
    uniformly from the non-neighbours of i. Nodes already adjacent to all
    others keep their edge.
    """
    n, k, p = spec.n, spec.k, spec.p
    rng = _rng(spec.seed)
    adj = [set() for _ in range(n)]
    for i in range(n):
        for j in range(1, k // 2 + 1):
            v = (i + j) % n
            adj[i].add(v)
            adj[v].add(i)
    if p > 0:
        for i in range(n):
            for j in range(1, k // 2 + 1):
                v = (i + j) % n
                if rng.random() >= p or v not in adj[i]:
                    continue
                if len(adj[i]) >= n - 1:
                    continue
                candidates = [w for w in range(n) if w != i and w not in adj[i]]
                w = candidates[int(rng.integers(len(candidates)))]
                adj[i].discard(v)
                adj[v].discard(i)
                adj[i].add(w)
                adj[w].add(i)
    return _topology(n, ((u, v) for u in range(n) for v in adj[u] if u < v))


def generate_ba(spec: GeneratorSpec) -> Graph:
    """Barabasi-Albert growth from m isolated nodes.

    Node m links to all m seed nodes; every later node draws m distinct
    targets with probability proportional to degree (draws are repeated
    until m distinct targets are found). Exactly m(n - m) edges result.
    """
    n, m = spec.n, spec.m
    rng = _rng(spec.seed)
    pairs = []
    # one entry per edge endpoint, so a uniform pick is degree-proportional
    endpoints: list[int] = []
    targets = list(range(m))
    for new in range(m, n):
        for t in targets:
            pairs.append((t, new))
            endpoints.extend((t, new))
        chosen: list[int] = []
        picked = set()
        while len(chosen) < m and new + 1 < n:
            t = endpoints[int(rng.integers(len(endpoints)))]
            if t not in picked:
                picked.add(t)
                chosen.append(t)
        targets = chosen
    return _topology(n, pairs)


def generate(spec: GeneratorSpec) -> Graph:
    return {"ER": generate_er, "WS": generate_ws, "BA": generate_ba}[spec.model](spec)
