"""Undirected graphs with categorical and continuous node features and labelled edges.

Nodes are dense integers ``0..node_count-1``.  Each node carries a categorical
feature (a colour id into some colour table) and a continuous real feature.
Edges are undirected, carry a small non-negative integer label, and at most one
edge exists per unordered node pair.  Immutable after construction.
"""

from __future__ import annotations

import numpy as np

from .errors import NodeOutOfRange, WlkitError


class Graph:
    """Adjacency-list graph; symmetric by construction."""

    def __init__(self, categorical, continuous=None, edges=()):
        self.categorical = [int(c) for c in categorical]
        n = len(self.categorical)
        if continuous is None:
            self.continuous = [0.0] * n
        else:
            self.continuous = [float(x) for x in continuous]
            if len(self.continuous) != n:
                raise WlkitError("continuous feature list length mismatch")
        self._adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        self._edges: list[tuple[int, int, int]] = []
        seen_pairs = set()
        for u, v, label in edges:
            u, v, label = int(u), int(v), int(label)
            if not (0 <= u < n and 0 <= v < n):
                raise NodeOutOfRange(f"edge ({u},{v}) outside 0..{n - 1}")
            if u == v:
                raise WlkitError(f"self-loop on node {u}")
            if label < 0:
                raise WlkitError(f"negative edge label {label}")
            pair = (min(u, v), max(u, v))
            if pair in seen_pairs:
                raise WlkitError(f"duplicate edge between {pair[0]} and {pair[1]}")
            seen_pairs.add(pair)
            self._adj[u].append((v, label))
            self._adj[v].append((u, label))
            self._edges.append((*pair, label))
        self._padded = None

    @property
    def node_count(self) -> int:
        return len(self.categorical)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def neighbours(self, u: int) -> list[tuple[int, int]]:
        """(neighbour, edge label) pairs of ``u``; treat as read-only."""
        if not (0 <= u < self.node_count):
            raise NodeOutOfRange(f"node {u} outside 0..{self.node_count - 1}")
        return self._adj[u]

    def edges(self) -> list[tuple[int, int, int]]:
        """Edges as (u, v, label) with u < v, sorted."""
        return sorted(self._edges)

    def padded_adjacency(self):
        """Fixed-width neighbour arrays for vectorised kernels (cached).

        Returns (nbr, lbl, valid, max_label): int64 arrays of shape
        (node_count, max_degree) plus the largest edge label (0 when edgeless).
        Padding entries have valid == 0 and point at node 0.
        """
        if self._padded is None:
            n = self.node_count
            maxdeg = max((len(a) for a in self._adj), default=0)
            nbr = np.zeros((n, maxdeg), dtype=np.int64)
            lbl = np.zeros((n, maxdeg), dtype=np.int64)
            valid = np.zeros((n, maxdeg), dtype=np.int64)
            for u, adj in enumerate(self._adj):
                for k, (v, label) in enumerate(adj):
                    nbr[u, k] = v
                    lbl[u, k] = label
                    valid[u, k] = 1
            max_label = max((l for _, _, l in self._edges), default=0)
            self._padded = (nbr, lbl, valid, max_label)
        return self._padded

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.categorical == other.categorical
            and self.continuous == other.continuous
            and sorted(self._edges) == sorted(other._edges)
        )

    def __repr__(self):
        return f"Graph(nodes={self.node_count}, edges={self.edge_count})"


def to_dot(graph: Graph, colour_labels=None, node_names=None) -> str:
    """Render a graph as DOT text with deterministic node order.

    ``colour_labels`` maps colour ids to readable names (falls back to ``c<id>``);
    ``node_names`` optionally overrides the per-node identifier text.
    """
    lines = ["graph g {"]
    for v in range(graph.node_count):
        colour = graph.categorical[v]
        if colour_labels is not None and 0 <= colour < len(colour_labels):
            label = colour_labels[colour]
        else:
            label = f"c{colour}"
        name = node_names[v] if node_names is not None else f"n{v}"
        value = graph.continuous[v]
        if value != 0.0:
            label = f"{label}={value:g}"
        lines.append(f'  n{v} [label="{name}: {label}"];')
    for u, v, label in graph.edges():
        lines.append(f'  n{u} -- n{v} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(graph: Graph) -> dict:
    """Plain-dict dump mirroring the graph fields."""
    return {
        "node_count": graph.node_count,
        "categorical": list(graph.categorical),
        "continuous": list(graph.continuous),
        "edges": [list(e) for e in graph.edges()],
    }


def graph_from_json(obj: dict) -> Graph:
    try:
        categorical = obj["categorical"]
        continuous = obj["continuous"]
        edges = [tuple(e) for e in obj["edges"]]
        if obj["node_count"] != len(categorical):
            raise WlkitError("node_count disagrees with categorical feature list")
    except (KeyError, TypeError) as exc:
        raise WlkitError(f"malformed graph JSON: {exc}") from exc
    return Graph(categorical, continuous, edges)
