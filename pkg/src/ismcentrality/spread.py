"""First-arrival influence probabilities, the influence matrix and cohesion.

The spread probability from ``s`` to ``t`` accounts for every walk of at most
``l_max`` edges that starts at ``s`` and meets ``t`` only at its last step.
Walk probabilities are combined pairwise through their longest common
prefix (``combine_pair``); the closed form of doing so over the whole walk
trie is a noisy-OR recursion on (node, remaining budget), which is what the
kernels in ``_kernel``/``_fallback`` evaluate.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass

import numpy as np

from . import _backend
from .graph import Graph

__all__ = [
    "SpreadConfig",
    "InfluenceMatrix",
    "combine_pair",
    "spread_probability",
    "influence_matrix",
    "cohesion",
]

CLAMP_TOLERANCE = 1e-9


@dataclass(frozen=True)
class SpreadConfig:
    """Walk budget and probability settings.

    ``l_max`` counts edges. ``edge_probability`` replaces every edge
    probability when given. ``apply_target_weight`` multiplies arriving
    walks by the target's node weight.
    """

    l_max: int = 20
    edge_probability: float | None = None
    apply_target_weight: bool = True

    def __post_init__(self):
        if int(self.l_max) != self.l_max or self.l_max < 0:
            raise ValueError(f"l_max must be a non-negative integer, got {self.l_max!r}")
        if self.edge_probability is not None and not 0.0 <= self.edge_probability <= 1.0:
            raise ValueError(f"edge probability must lie in [0, 1], got {self.edge_probability!r}")

    def with_edge_probability(self, p: float | None) -> "SpreadConfig":
        return SpreadConfig(self.l_max, p, self.apply_target_weight)


def _clamp(value: float) -> float:
    if value < 0.0:
        if value < -CLAMP_TOLERANCE:
            raise ArithmeticError(f"probability underflow {value!r}")
        return 0.0
    if value > 1.0:
        if value > 1.0 + CLAMP_TOLERANCE:
            raise ArithmeticError(f"probability overflow {value!r}")
        return 1.0
    return value


def combine_pair(p1: float, p2: float, p3: float) -> float:
    """Union probability of two walks sharing a common prefix of probability ``p3``.

    The walks are conditionally independent given the prefix, so
    ``P(L1 or L2) = p1 + p2 - p1 * p2 / p3``.
    """
    if not 0.0 < p3 <= 1.0:
        raise ValueError(f"prefix probability must lie in (0, 1], got {p3!r}")
    slack = p3 * (1.0 + 1e-12)
    if not (0.0 <= p1 <= slack and 0.0 <= p2 <= slack):
        raise ValueError(f"walk probabilities {p1!r}, {p2!r} must lie in [0, {p3!r}]")
    return _clamp(p1 + p2 - p1 * p2 / p3)


def _arrays(g: Graph, cfg: SpreadConfig):
    return g.csr(cfg.edge_probability)


def spread_probability(g: Graph, s: int, t: int, cfg: SpreadConfig = SpreadConfig(),
                       backend: str | None = None) -> float:
    """Probability that influence starting at ``s`` first reaches ``t``."""
    if s == t:
        raise ValueError("source and target must differ")
    idx = g.index
    if s not in idx or t not in idx:
        raise KeyError(f"nodes {s}, {t} must both be in the graph")
    col = _backend.first_arrival_columns(
        *_arrays(g, cfg), np.array([idx[t]], dtype=np.int64), cfg.l_max,
        cfg.apply_target_weight, backend=backend, threads=1,
    )
    return float(col[idx[s], 0])


@dataclass(frozen=True, eq=False)
class InfluenceMatrix:
    """``values[i, j]`` is the first-arrival probability from ``nodes[i]`` to ``nodes[j]``."""

    nodes: tuple[int, ...]
    values: np.ndarray
    config: SpreadConfig

    def __post_init__(self):
        n = len(self.nodes)
        if self.values.shape != (n, n):
            raise ValueError(f"matrix shape {self.values.shape} does not match {n} nodes")

    @property
    def n(self) -> int:
        return len(self.nodes)

    def __getitem__(self, pair: tuple[int, int]) -> float:
        i, j = pair
        pos = {v: k for k, v in enumerate(self.nodes)}
        return float(self.values[pos[i], pos[j]])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["source", *self.nodes])
        for v, row in zip(self.nodes, self.values):
            w.writerow([v, *(repr(float(x)) for x in row)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, config: SpreadConfig = SpreadConfig()) -> "InfluenceMatrix":
        rows = list(csv.reader(io.StringIO(text)))
        nodes = tuple(int(x) for x in rows[0][1:])
        if [int(r[0]) for r in rows[1:]] != list(nodes):
            raise ValueError("row labels do not match the header")
        values = np.array([[float(x) for x in r[1:]] for r in rows[1:]], dtype=np.float64)
        return cls(nodes, values.reshape(len(nodes), len(nodes)), config)

    def to_json(self) -> str:
        body = {
            "nodes": list(self.nodes),
            "config": asdict(self.config),
            "m": self.values.tolist(),
        }
        return json.dumps(body)

    @classmethod
    def from_json(cls, text: str) -> "InfluenceMatrix":
        body = json.loads(text)
        nodes = tuple(int(v) for v in body["nodes"])
        values = np.array(body["m"], dtype=np.float64).reshape(len(nodes), len(nodes))
        return cls(nodes, values, SpreadConfig(**body["config"]))


def influence_matrix(g: Graph, cfg: SpreadConfig = SpreadConfig(),
                     backend: str | None = None, threads: int | None = None) -> InfluenceMatrix:
    n = len(g)
    values = _backend.first_arrival_columns(
        *_arrays(g, cfg), np.arange(n, dtype=np.int64), cfg.l_max,
        cfg.apply_target_weight, backend=backend, threads=threads,
    )
    np.fill_diagonal(values, 1.0)
    return InfluenceMatrix(g.nodes, values, cfg)


def cohesion(m: InfluenceMatrix | np.ndarray) -> float:
    """Sum of the off-diagonal entries."""
    values = m.values if isinstance(m, InfluenceMatrix) else np.asarray(m)
    return float(values.sum() - np.trace(values))
