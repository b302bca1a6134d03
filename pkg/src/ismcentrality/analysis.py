"""Edge-probability sweeps, dense rankings and Pearson correlation tables."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .classic import STRUCTURAL_METRICS, betweenness_centrality, closeness_centrality, degree_centrality
from .graph import Graph
from .metrics import ISM_METRICS, CentralityVector, in_centrality, ism_betweenness, out_centrality
from .spread import SpreadConfig, influence_matrix

__all__ = [
    "RankTable",
    "SweepResult",
    "CorrelationRow",
    "UndefinedCorrelation",
    "DEFAULT_GRID",
    "ALL_METRICS",
    "rank",
    "pearson",
    "parse_grid",
    "sweep",
    "correlation_table",
]

ALL_METRICS = ISM_METRICS + STRUCTURAL_METRICS
DEFAULT_GRID = (0.01,) + tuple(round(k / 10, 10) for k in range(1, 11))
RANK_TOLERANCE = 1e-9


class UndefinedCorrelation(ValueError):
    pass


@dataclass(frozen=True)
class RankTable:
    """Dense ranks, 1 = largest value. ``groups[r - 1]`` lists the nodes of rank r."""

    metric: str
    ranks: dict[int, int]
    groups: tuple[tuple[int, ...], ...]

    def __getitem__(self, node: int) -> int:
        return self.ranks[node]

    def order(self) -> list[int]:
        return [v for grp in self.groups for v in grp]


def rank(v: CentralityVector, tolerance: float = RANK_TOLERANCE) -> RankTable:
    """Descending dense ranking; values closer than ``tolerance`` to their
    neighbour in sorted order share a rank (so ties chain transitively)."""
    if tolerance < 0:
        raise ValueError("tolerance must be non-negative")
    order = sorted(zip(v.values.tolist(), v.nodes), key=lambda pair: (-pair[0], pair[1]))
    groups: list[list[int]] = []
    prev = None
    for value, node in order:
        if prev is None or prev - value > tolerance:
            groups.append([])
        groups[-1].append(node)
        prev = value
    ranks = {node: r for r, grp in enumerate(groups, start=1) for node in grp}
    return RankTable(v.metric, ranks, tuple(tuple(sorted(g)) for g in groups))


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Sample Pearson correlation coefficient."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("pearson needs two sequences of equal length")
    if x.size < 2:
        raise ValueError("pearson needs at least two observations")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise UndefinedCorrelation("correlation is undefined for a constant sequence")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return min(1.0, max(-1.0, r))


def _check_grid(grid: Iterable[float]) -> tuple[float, ...]:
    grid = tuple(float(p) for p in grid)
    if not grid:
        raise ValueError("probability grid is empty")
    for p in grid:
        if not 0.0 < p <= 1.0:
            raise ValueError(f"grid value {p!r} outside (0, 1]")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("probability grid must be strictly increasing")
    return grid


def parse_grid(text: str) -> tuple[float, ...]:
    """Parse ``"0.1:0.9:0.1"``, ``"0.01,0.1,0.5"`` or a mix such as ``"0.01,0.1:1:0.1"``."""
    values: list[float] = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        if ":" in item:
            parts = item.split(":")
            if len(parts) != 3:
                raise ValueError(f"range {item!r} must be start:stop:step")
            start, stop, step = map(float, parts)
            if step <= 0:
                raise ValueError("grid step must be positive")
            k = 0
            while start + k * step <= stop + 1e-9:
                values.append(round(start + k * step, 10))
                k += 1
        else:
            values.append(float(item))
    return _check_grid(values)


@dataclass
class SweepResult:
    graph_id: str
    l_max: int
    grid: tuple[float, ...]
    metrics: tuple[str, ...]
    vectors: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)

    def get(self, metric: str, p: float) -> CentralityVector:
        key = (metric, None) if metric in STRUCTURAL_METRICS else (metric, p)
        if key in self.errors:
            raise ValueError(self.errors[key])
        return self.vectors[key]

    def records(self) -> list[dict]:
        """Long-format rows: structural metrics once (empty edge_prob and
        l_max), then every ISM metric per grid point, in request order."""
        keys = [(m, None) for m in self.metrics if m in STRUCTURAL_METRICS]
        keys += [(m, p) for p in self.grid for m in self.metrics if m not in STRUCTURAL_METRICS]
        out = []
        for metric, p in keys:
            l_max = None if p is None else self.l_max
            if (metric, p) in self.errors:
                out.append({"node": None, "metric": metric, "edge_prob": p, "l_max": l_max,
                            "value": None, "rank": None, "status": f"error: {self.errors[(metric, p)]}"})
                continue
            vec = self.vectors[(metric, p)]
            ranks = rank(vec)
            for node, value in zip(vec.nodes, vec.values.tolist()):
                out.append({"node": node, "metric": metric, "edge_prob": p, "l_max": l_max,
                            "value": value, "rank": ranks[node], "status": "ok"})
        return out

    def to_csv(self) -> str:
        return records_csv(self.records(), ("node", "metric", "edge_prob", "l_max", "value", "rank", "status"))

    def to_json(self) -> str:
        return json.dumps({"graph": self.graph_id, "l_max": self.l_max, "grid": list(self.grid),
                           "rows": self.records()})


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def records_csv(records, fields) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    for r in records:
        w.writerow([_fmt(r[k]) for k in fields])
    return buf.getvalue()


def _structural(g: Graph, metric: str) -> CentralityVector:
    return {"degree": degree_centrality, "closeness": closeness_centrality,
            "betweenness": betweenness_centrality}[metric](g)


def sweep(g: Graph, grid: Iterable[float], cfg: SpreadConfig = SpreadConfig(),
          metrics: Iterable[str] = ALL_METRICS, *, graph_id: str = "graph",
          on_error: str = "raise", backend: str | None = None) -> SweepResult:
    """Evaluate the requested metrics at every grid point.

    ISM metrics use the grid value as a uniform edge probability; structural
    metrics are computed once. With ``on_error="record"`` failures are kept
    in ``result.errors`` instead of raised.
    """
    metrics = tuple(dict.fromkeys(metrics))
    if not metrics:
        raise ValueError("no metrics requested")
    unknown = set(metrics) - set(ALL_METRICS)
    if unknown:
        raise ValueError(f"unknown metrics {sorted(unknown)}; choose from {ALL_METRICS}")
    if on_error not in ("raise", "record"):
        raise ValueError("on_error must be 'raise' or 'record'")
    grid = _check_grid(grid)
    result = SweepResult(graph_id, cfg.l_max, grid, metrics)

    def attempt(key, compute):
        try:
            result.vectors[key] = compute()
        except (ValueError, ArithmeticError) as exc:
            where = "structural" if key[1] is None else f"edge probability {key[1]}"
            if on_error == "raise":
                raise type(exc)(f"{key[0]} at {where}: {exc}") from exc
            result.errors[key] = str(exc)

    for metric in metrics:
        if metric in STRUCTURAL_METRICS:
            attempt((metric, None), lambda: _structural(g, metric))
    for p in grid:
        wanted = [m for m in metrics if m in ISM_METRICS]
        if not wanted:
            continue
        pcfg = cfg.with_edge_probability(p)
        m = influence_matrix(g, pcfg, backend=backend)
        for metric in wanted:
            if metric == "out":
                attempt((metric, p), lambda: out_centrality(m))
            elif metric == "in":
                attempt((metric, p), lambda: in_centrality(m))
            else:
                attempt((metric, p), lambda: ism_betweenness(g, pcfg, base=m, backend=backend))
    return result


@dataclass(frozen=True)
class CorrelationRow:
    edge_prob: float
    metric_a: str
    metric_b: str
    r: float | None
    status: str = "ok"


def correlation_table(s: SweepResult, a: str, b: str) -> list[CorrelationRow]:
    """Pearson correlation of metrics ``a`` and ``b`` at each grid point."""
    for metric in (a, b):
        if metric not in s.metrics:
            raise ValueError(f"metric {metric!r} is not in the sweep")
    rows = []
    for p in s.grid:
        try:
            x, y = s.get(a, p), s.get(b, p)
            rows.append(CorrelationRow(p, a, b, pearson(x.values, y.values)))
        except UndefinedCorrelation as exc:
            rows.append(CorrelationRow(p, a, b, None, f"undefined: {exc}"))
        except ValueError as exc:
            rows.append(CorrelationRow(p, a, b, None, f"error: {exc}"))
    return rows


def correlation_csv(rows: Sequence[CorrelationRow]) -> str:
    return records_csv([r.__dict__ for r in rows], ("edge_prob", "metric_a", "metric_b", "r", "status"))


def correlation_json(rows: Sequence[CorrelationRow]) -> str:
    return json.dumps([r.__dict__ for r in rows])
