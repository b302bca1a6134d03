"""Centrality vectors and the influence-based centralities.

Out-centrality and in-centrality are the row and column means of the
off-diagonal influence matrix. ISM betweenness is the relative loss of
cohesion when a node and its incident edges are deleted.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .graph import Graph
from .spread import CLAMP_TOLERANCE, InfluenceMatrix, SpreadConfig, cohesion, influence_matrix

__all__ = [
    "CentralityVector",
    "out_centrality",
    "in_centrality",
    "ism_betweenness",
    "ISM_METRICS",
]

ISM_METRICS = ("out", "in", "ism_betweenness")
CSV_FIELDS = ("node", "metric", "edge_prob", "l_max", "value")


@dataclass(frozen=True, eq=False)
class CentralityVector:
    """Per-node values of one metric.

    ``edge_probability`` and ``l_max`` are None for structural metrics.
    """

    metric: str
    nodes: tuple[int, ...]
    values: np.ndarray
    edge_probability: float | None = None
    l_max: int | None = None
    note: str | None = field(default=None)

    def __post_init__(self):
        if len(self.nodes) != len(self.values):
            raise ValueError("one value per node is required")

    def __getitem__(self, node: int) -> float:
        return float(self.values[self.nodes.index(node)])

    def as_dict(self) -> dict[int, float]:
        return {v: float(x) for v, x in zip(self.nodes, self.values)}

    def rows(self) -> list[dict]:
        return [
            {
                "node": v,
                "metric": self.metric,
                "edge_prob": self.edge_probability,
                "l_max": self.l_max,
                "value": float(x),
            }
            for v, x in zip(self.nodes, self.values)
        ]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for r in self.rows():
            w.writerow(["" if r[k] is None else repr(r[k]) if isinstance(r[k], float) else r[k]
                        for k in CSV_FIELDS])
        return buf.getvalue()


def _normalised_sums(m: InfluenceMatrix, axis: int, metric: str) -> CentralityVector:
    n = m.n
    if n < 2:
        raise ValueError(f"{metric} needs at least two nodes")
    off = m.values.sum(axis=axis) - np.diag(m.values)
    return CentralityVector(metric, m.nodes, off / (n - 1),
                            m.config.edge_probability, m.config.l_max)


def out_centrality(m: InfluenceMatrix) -> CentralityVector:
    """Average influence a node exerts on the others."""
    return _normalised_sums(m, 1, "out")


def in_centrality(m: InfluenceMatrix) -> CentralityVector:
    """Average influence a node receives from the others."""
    return _normalised_sums(m, 0, "in")


def _without(indptr, indices, probs, v):
    src = np.repeat(np.arange(len(indptr) - 1), np.diff(indptr))
    keep = (src != v) & (indices != v)
    counts = np.bincount(src[keep], minlength=len(indptr) - 1)
    new_ptr = np.zeros_like(indptr)
    np.cumsum(counts, out=new_ptr[1:])
    return new_ptr, np.ascontiguousarray(indices[keep]), np.ascontiguousarray(probs[keep])


def ism_betweenness(g: Graph, cfg: SpreadConfig = SpreadConfig(), *, base: InfluenceMatrix | None = None,
                    backend: str | None = None, threads: int | None = None) -> CentralityVector:
    """Relative cohesion drop ``(C - C_v) / C`` for every node ``v``.

    Each removal recomputes the whole influence matrix with the same
    configuration. A precomputed ``base`` matrix for ``g`` may be passed in.
    """
    if base is None:
        base = influence_matrix(g, cfg, backend=backend, threads=threads)
    total = cohesion(base)
    if total <= 0.0:
        raise ValueError("ISM betweenness is undefined for a graph with zero cohesion")
    indptr, indices, probs, weights = g.csr(cfg.edge_probability)
    n = len(g)
    out = np.empty(n)
    for v in range(n):
        ip, ix, pr = _without(indptr, indices, probs, v)
        targets = np.array([t for t in range(n) if t != v], dtype=np.int64)
        cols = _backend.first_arrival_columns(ip, ix, pr, weights, targets, cfg.l_max,
                                              cfg.apply_target_weight, backend=backend,
                                              threads=threads)
        # each column holds a 1 at its own target
        reduced = cols.sum() - len(targets)
        b = (total - reduced) / total
        if b < 0.0:
            if b < -CLAMP_TOLERANCE:
                raise ArithmeticError(f"node {g.nodes[v]}: removal increased cohesion")
            b = 0.0
        out[v] = b
    return CentralityVector("ism_betweenness", g.nodes, out, cfg.edge_probability, cfg.l_max)
