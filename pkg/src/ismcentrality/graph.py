"""Directed, probability-weighted graphs and the plain-text edge-list format.

Edge-list format (UTF-8, LF or CRLF line endings)::

    # comment
    u v        edge with the default probability
    u v w      edge with probability w in [0, 1]
    u          isolated node declaration

Node labels are non-negative integers and are kept verbatim; dense indices
used by the numerical kernels never leave this package.
"""
from __future__ import annotations

import io
from collections import deque
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping, TextIO

import numpy as np

__all__ = [
    "Graph",
    "EdgeListError",
    "parse_edge_list",
    "read_edge_list",
    "serialize_edge_list",
    "remove_node",
    "connected_components",
]


class EdgeListError(ValueError):
    """Malformed edge-list input. ``lineno`` is 1-based, or None."""

    def __init__(self, message: str, lineno: int | None = None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


def _check_prob(value: float, what: str) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{what} must lie in [0, 1], got {value!r}")
    return value


class Graph:
    """Immutable directed graph with edge probabilities and node weights.

    Parameters
    ----------
    nodes : iterable of int
        Node labels. Labels appearing only in ``edges`` are added as well.
        Stored in increasing order.
    edges : mapping (u, v) -> probability
        Directed entries. Self-loops are rejected.
    node_weights : mapping node -> probability, optional
        Pass-through probability of each node; missing nodes default to 1.
    undirected : bool
        Records that the graph came from an undirected source, i.e. every
        edge is present in both directions.
    """

    def __init__(
        self,
        nodes: Iterable[int] = (),
        edges: Mapping[tuple[int, int], float] | None = None,
        node_weights: Mapping[int, float] | None = None,
        undirected: bool = False,
    ):
        edges = dict(edges or {})
        labels = set()
        for v in nodes:
            labels.add(self._label(v))
        clean: dict[tuple[int, int], float] = {}
        for (u, v), p in edges.items():
            u, v = self._label(u), self._label(v)
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            clean[(u, v)] = _check_prob(p, f"probability of edge ({u}, {v})")
            labels.add(u)
            labels.add(v)
        weights = {}
        for v, w in (node_weights or {}).items():
            v = self._label(v)
            if v not in labels:
                raise ValueError(f"weight given for unknown node {v}")
            weights[v] = _check_prob(w, f"weight of node {v}")
        if undirected:
            for u, v in clean:
                if (v, u) not in clean:
                    raise ValueError(f"undirected graph is missing edge ({v}, {u})")
        self._nodes = tuple(sorted(labels))
        self._edges = MappingProxyType(dict(sorted(clean.items())))
        self._weights = MappingProxyType({v: weights.get(v, 1.0) for v in self._nodes})
        self._undirected = bool(undirected)

    @staticmethod
    def _label(v) -> int:
        if isinstance(v, (bool, np.bool_)) or not isinstance(v, (int, np.integer)):
            raise TypeError(f"node labels must be integers, got {v!r}")
        v = int(v)
        if v < 0:
            raise ValueError(f"node labels must be non-negative, got {v}")
        return v

    @property
    def nodes(self) -> tuple[int, ...]:
        return self._nodes

    @property
    def edges(self) -> Mapping[tuple[int, int], float]:
        return self._edges

    @property
    def node_weights(self) -> Mapping[int, float]:
        return self._weights

    @property
    def undirected(self) -> bool:
        return self._undirected

    def __len__(self) -> int:
        return len(self._nodes)

    def __contains__(self, v) -> bool:
        return v in self.index

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._nodes == other._nodes
            and dict(self._edges) == dict(other._edges)
            and dict(self._weights) == dict(other._weights)
            and self._undirected == other._undirected
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        kind = "undirected" if self._undirected else "directed"
        return f"<Graph {kind}: {len(self._nodes)} nodes, {len(self._edges)} directed edges>"

    @cached_property
    def index(self) -> dict[int, int]:
        """Label -> dense index."""
        return {v: i for i, v in enumerate(self._nodes)}

    @cached_property
    def successors(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {v: [] for v in self._nodes}
        for u, v in self._edges:
            out[u].append(v)
        return {v: tuple(sorted(s)) for v, s in out.items()}

    @cached_property
    def neighbors(self) -> dict[int, tuple[int, ...]]:
        """Adjacent nodes ignoring edge direction."""
        out: dict[int, set[int]] = {v: set() for v in self._nodes}
        for u, v in self._edges:
            out[u].add(v)
            out[v].add(u)
        return {v: tuple(sorted(s)) for v, s in out.items()}

    def undirected_edges(self) -> list[tuple[int, int]]:
        """Unordered adjacent pairs ``(u, v)`` with ``u < v``."""
        return sorted({(min(u, v), max(u, v)) for u, v in self._edges})

    def with_edge_probability(self, p: float) -> "Graph":
        """Copy of the graph with every edge probability set to ``p``."""
        p = _check_prob(p, "edge probability")
        return Graph(
            self._nodes,
            {e: p for e in self._edges},
            self._weights,
            self._undirected,
        )

    def csr(self, edge_probability: float | None = None):
        """CSR arrays ``(indptr, indices, probs, weights)`` over dense indices.

        Successors of each row are sorted by dense index (equivalently by
        label). ``edge_probability`` overrides every edge probability.
        """
        n = len(self._nodes)
        idx = self.index
        m = len(self._edges)
        src = np.empty(m, dtype=np.int64)
        dst = np.empty(m, dtype=np.int64)
        prob = np.empty(m, dtype=np.float64)
        for k, ((u, v), p) in enumerate(self._edges.items()):
            src[k] = idx[u]
            dst[k] = idx[v]
            prob[k] = p
        if edge_probability is not None:
            prob[:] = _check_prob(edge_probability, "edge probability")
        order = np.lexsort((dst, src))
        src, dst, prob = src[order], dst[order], prob[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, src + 1, 1)
        np.cumsum(indptr, out=indptr)
        weights = np.array([self._weights[v] for v in self._nodes], dtype=np.float64)
        return indptr, dst, prob, weights


def parse_edge_list(
    text: str | TextIO,
    undirected: bool = True,
    default_probability: float = 1.0,
) -> Graph:
    """Parse the edge-list format into a :class:`Graph`.

    With ``undirected`` every line produces both directed entries with the
    same probability. Duplicate edges (including ``u v`` followed by ``v u``
    in undirected mode) are an error.
    """
    default_probability = _check_prob(default_probability, "default probability")
    if isinstance(text, str):
        text = io.StringIO(text)
    nodes: list[int] = []
    edges: dict[tuple[int, int], float] = {}
    for lineno, raw in enumerate(text, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) > 3:
            raise EdgeListError(f"expected 'u v [w]', got {raw.strip()!r}", lineno)
        try:
            ids = [int(tok) for tok in tokens[:2]]
        except ValueError:
            raise EdgeListError(f"node labels must be integers: {raw.strip()!r}", lineno) from None
        if any(v < 0 for v in ids):
            raise EdgeListError("node labels must be non-negative", lineno)
        if len(ids) == 1:
            nodes.append(ids[0])
            continue
        u, v = ids
        if u == v:
            raise EdgeListError(f"self-loop on node {u}", lineno)
        if len(tokens) == 3:
            try:
                w = float(tokens[2])
            except ValueError:
                raise EdgeListError(f"bad probability {tokens[2]!r}", lineno) from None
            if not 0.0 <= w <= 1.0:
                raise EdgeListError(f"probability {w!r} outside [0, 1]", lineno)
        else:
            w = default_probability
        pairs = [(u, v), (v, u)] if undirected else [(u, v)]
        for pair in pairs:
            if pair in edges:
                raise EdgeListError(f"duplicate edge {u} {v}", lineno)
            edges[pair] = w
    return Graph(nodes, edges, undirected=undirected)


def read_edge_list(path, undirected: bool = True, default_probability: float = 1.0) -> Graph:
    with open(path, encoding="utf-8", newline=None) as fh:
        return parse_edge_list(fh, undirected, default_probability)


def serialize_edge_list(g: Graph) -> str:
    """Canonical edge-list text; ``parse_edge_list(text, g.undirected)`` gives ``g`` back.

    Node weights are not part of the format and are dropped.
    """
    lines = [f"# nodes={len(g)} undirected={int(g.undirected)}"]
    covered = set()
    if g.undirected:
        for u, v in g.undirected_edges():
            p, q = g.edges[(u, v)], g.edges[(v, u)]
            if p != q:
                raise ValueError(f"edge {u}-{v} has asymmetric probabilities; write it as directed")
            lines.append(f"{u} {v} {p!r}")
            covered.update((u, v))
    else:
        for (u, v), p in g.edges.items():
            lines.append(f"{u} {v} {p!r}")
            covered.update((u, v))
    lines.extend(str(v) for v in g.nodes if v not in covered)
    return "\n".join(lines) + "\n"


def remove_node(g: Graph, v: int) -> Graph:
    """New graph without ``v`` and its incident edges."""
    if v not in g:
        raise KeyError(f"node {v} is not in the graph")
    return Graph(
        (u for u in g.nodes if u != v),
        {e: p for e, p in g.edges.items() if v not in e},
        {u: w for u, w in g.node_weights.items() if u != v},
        g.undirected,
    )


def connected_components(g: Graph) -> list[list[int]]:
    """Weak components, each sorted, ordered by smallest member."""
    seen = set()
    comps = []
    nbrs = g.neighbors
    for root in g.nodes:
        if root in seen:
            continue
        seen.add(root)
        comp = [root]
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in nbrs[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return comps
