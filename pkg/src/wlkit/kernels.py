"""Colour-refinement kernels over feature graphs.

Five kernels share one lazily built injective hash: plain node refinement
(``wl``), refinement over ordered node pairs (``two_wl``), a cheaper local
variant over unordered pairs (``two_lwl``), per-node individualised reruns
(``iwl``), and the continuous-feature extension (``ccwl``).  Each kernel
returns the multiset of all colours seen across iterations 0..L as a Counter
keyed by dense colour id.

The injective hash is a :class:`ColourRegistry`: every distinct canonical
refinement key (own colour plus the sorted multiset of neighbour information)
gets a fresh dense id the first time it is seen.  A frozen registry never
mutates; unknown keys map to the reserved UNSEEN id.

Refinement rounds are vectorised.  Neighbour (colour, label) entries are
packed into single integers with fixed spans, sorted per node in descending
order (so the zero padding of fixed-width rows falls at the end and can be
stripped by length), and the canonical key of a node is the raw bytes of
``[own colour | packed neighbours]``.  Keys therefore hash at C speed and are
independent of node order, graph size and registry state; they are decoded to
readable arrays only when a model is serialised.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from .errors import NodeBudgetExceeded, WlkitError
from .graph import Graph

DEFAULT_PAIR_BUDGET = 10**6

AGGREGATORS = ("sum", "mean", "max")

_LABEL_SPAN = 256  # packed neighbour entry is colour * 256 + label + 1
_PAIR_SPAN = 1 << 31  # packed colour pair is first * 2^31 + second (+1)
_SCRATCH_CELLS = 4 * 10**6  # per-round scratch bound for the pair kernels

_INIT_TAGS = ("2wl0", "2lwl0")
_REFINE_SPANS = {"wl": _LABEL_SPAN, "2wl": _PAIR_SPAN, "2lwl": _PAIR_SPAN}


class FrozenColourRegistry:
    """Read-only registry view: unknown keys map to UNSEEN, nothing mutates."""

    def __init__(self, num_base_colours: int, table: dict):
        self.num_base_colours = num_base_colours
        self.individualised = num_base_colours
        self.unseen = num_base_colours + 1
        self.table = table

    def lookup(self, key) -> int:
        return self.table.get(key, self.unseen)

    def __len__(self):
        return len(self.table)


class ColourRegistry:
    """Lazily built injective map from canonical refinement keys to dense ids.

    Ids 0..num_base_colours-1 are the categorical base colours; the reserved
    individualised colour and the UNSEEN colour sit directly above them, and
    refined colours are handed out from num_base_colours + 2 upwards.
    """

    def __init__(self, num_base_colours: int):
        self.num_base_colours = num_base_colours
        self.individualised = num_base_colours
        self.unseen = num_base_colours + 1
        self.table: dict = {}
        self._next = num_base_colours + 2

    def lookup(self, key) -> int:
        colour = self.table.get(key)
        if colour is None:
            colour = self._next
            if colour >= _PAIR_SPAN:
                raise WlkitError("colour registry exhausted")
            self.table[key] = colour
            self._next += 1
        return colour

    def frozen(self) -> FrozenColourRegistry:
        """Shared read-only handle for embedding."""
        return FrozenColourRegistry(self.num_base_colours, self.table)

    def __len__(self):
        return len(self.table)

    def entries(self) -> list[tuple[tuple, int]]:
        """(key, id) pairs sorted by id; the serialisation order."""
        return sorted(self.table.items(), key=lambda kv: kv[1])

    @classmethod
    def from_entries(cls, num_base_colours: int, entries) -> "ColourRegistry":
        reg = cls(num_base_colours)
        for key, colour in entries:
            reg.table[key] = colour
        if reg.table:
            reg._next = max(reg.table.values()) + 1
        return reg


def key_to_canonical(key) -> list:
    """Decode an internal (tag, bytes) key into a readable nested array."""
    tag, blob = key
    row = np.frombuffer(blob, dtype=np.int64).tolist()
    if tag in _INIT_TAGS:
        first, second, shifted = row
        return [tag, first, second, shifted - 1 if shifted else None]
    span = _REFINE_SPANS[tag]
    shift = 1 if tag == "2lwl" else 0
    pairs = [[(p - shift) // span, (p - shift) % span] for p in row[1:]]
    if tag == "wl":
        pairs = [[c, l - 1] for c, l in pairs]
    return [tag, row[0], pairs]


def key_from_canonical(obj) -> tuple:
    """Inverse of :func:`key_to_canonical`; exact round trip."""
    if not isinstance(obj, list) or not obj or obj[0] not in (
        "wl",
        "2wl",
        "2lwl",
        *_INIT_TAGS,
    ):
        raise WlkitError(f"malformed registry key {obj!r}")
    tag = obj[0]
    if tag in _INIT_TAGS:
        _, first, second, label = obj
        row = [first, second, 0 if label is None else label + 1]
    else:
        span = _REFINE_SPANS[tag]
        shift = 1 if tag == "2lwl" else 0
        if tag == "wl":
            packs = [c * _LABEL_SPAN + l + 1 for c, l in obj[2]]
        else:
            packs = [a * span + b + shift for a, b in obj[2]]
        row = [obj[1], *packs]
    return (tag, np.array(row, dtype=np.int64).tobytes())


def _check_graph(graph: Graph, registry) -> None:
    base = registry.num_base_colours
    for c in graph.categorical:
        if not (0 <= c < base or c == registry.individualised):
            raise WlkitError(
                f"categorical feature {c} outside colour table of size {base}"
            )
    _, _, _, max_label = graph.padded_adjacency()
    if max_label >= _LABEL_SPAN - 1:
        raise WlkitError(f"edge label {max_label} too large (< {_LABEL_SPAN - 1})")


def _lookup_rows(rows: np.ndarray, widths, tag: str, registry) -> list[int]:
    """Map each row of packed int64 keys to its colour id.

    ``widths`` gives the number of meaningful leading entries per row (the
    rest is zero padding); None means every entry counts.
    """
    nrows, rowlen = rows.shape
    blob = rows.tobytes()
    step = rowlen * 8
    lookup = registry.lookup
    if widths is None:
        return [lookup((tag, blob[o : o + step])) for o in range(0, nrows * step, step)]
    return [
        lookup((tag, blob[i * step : i * step + 8 * w])) for i, w in enumerate(widths)
    ]


def _refine_rounds(colour_rows: np.ndarray, graph: Graph, iterations: int, registry):
    """Run WL refinement on ``colour_rows`` (runs x nodes), yielding each round.

    Shared by wl, iwl and ccwl; the canonical key of a node is its own colour
    plus the (colour, edge label) pairs of its neighbours in sorted order.
    """
    nbr, lbl, valid, _ = graph.padded_adjacency()
    runs, n = colour_rows.shape
    colours = colour_rows
    yield colours
    if iterations == 0:
        return
    shifted_labels = lbl + 1
    widths = [1 + len(graph.neighbours(v)) for v in range(n)] * runs
    for _ in range(iterations):
        packed = (colours[:, nbr] * _LABEL_SPAN + shifted_labels) * valid
        packed.sort(axis=2)
        rows = np.concatenate([colours[:, :, None], packed[:, :, ::-1]], axis=2)
        ids = _lookup_rows(rows.reshape(runs * n, -1), widths, "wl", registry)
        colours = np.array(ids, dtype=np.int64).reshape(runs, n)
        yield colours


def wl(graph: Graph, iterations: int, registry) -> Counter:
    """Node colour refinement; returns the multiset of colours over rounds 0..L."""
    _check_graph(graph, registry)
    counts: Counter = Counter()
    if graph.node_count == 0:
        return counts
    init = np.array([graph.categorical], dtype=np.int64)
    for colours in _refine_rounds(init, graph, iterations, registry):
        counts.update(colours.ravel().tolist())
    return counts


def iwl(graph: Graph, iterations: int, registry) -> Counter:
    """WL rerun once per node with that node individualised.

    Run w starts from the categorical colours with node w's colour replaced by
    the reserved individualised id; the output is the union over all runs.
    """
    _check_graph(graph, registry)
    counts: Counter = Counter()
    n = graph.node_count
    if n == 0:
        return counts
    init = np.tile(np.array(graph.categorical, dtype=np.int64), (n, 1))
    init[np.arange(n), np.arange(n)] = registry.individualised
    for colours in _refine_rounds(init, graph, iterations, registry):
        counts.update(colours.ravel().tolist())
    return counts


def ccwl(graph: Graph, iterations: int, registry, aggregator: str = "sum"):
    """WL plus per-colour aggregation of continuous node features.

    Returns (multiset, colour -> aggregated feature).  A colour's node set
    holds every node that exhibited it at any round; UNSEEN is excluded.
    """
    if aggregator not in AGGREGATORS:
        raise WlkitError(f"unknown aggregator {aggregator!r}")
    _check_graph(graph, registry)
    counts: Counter = Counter()
    n = graph.node_count
    if n == 0:
        return counts, {}
    init = np.array([graph.categorical], dtype=np.int64)
    exhibited: dict[int, set[int]] = {}
    for colours in _refine_rounds(init, graph, iterations, registry):
        row = colours.ravel().tolist()
        counts.update(row)
        for v, colour in enumerate(row):
            exhibited.setdefault(colour, set()).add(v)
    exhibited.pop(registry.unseen, None)
    feature = graph.continuous
    if aggregator == "sum":
        reduce = sum
    elif aggregator == "mean":
        def reduce(xs):
            return sum(xs) / len(xs)
    else:
        reduce = max
    fclr = {
        colour: float(reduce([feature[v] for v in sorted(nodes)]))
        for colour, nodes in sorted(exhibited.items())
    }
    return counts, fclr


def _edge_label_matrix(graph: Graph) -> np.ndarray:
    """Dense pair label matrix: edge label where present, -1 elsewhere."""
    n = graph.node_count
    e = np.full((n, n), -1, dtype=np.int64)
    for u, v, label in graph.edges():
        e[u, v] = label
        e[v, u] = label
    return e


def two_wl(
    graph: Graph,
    iterations: int,
    registry,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
) -> Counter:
    """Colour refinement over all ordered node pairs.

    The initial colour of (v, u) is the triple of both node colours and the
    edge label between them (None when not adjacent, including self pairs);
    the neighbourhood of (v, u) is the multiset over all nodes w of the
    ordered colour pairs (colour(w, u), colour(v, w)).
    """
    _check_graph(graph, registry)
    counts: Counter = Counter()
    n = graph.node_count
    if n == 0:
        return counts
    if n * n > pair_budget:
        raise NodeBudgetExceeded(f"{n}^2 ordered pairs exceed budget {pair_budget}")
    cats = np.array(graph.categorical, dtype=np.int64)
    init_rows = np.stack(
        [
            np.repeat(cats, n),
            np.tile(cats, n),
            (_edge_label_matrix(graph) + 1).reshape(-1),
        ],
        axis=1,
    )
    ids = _lookup_rows(init_rows, None, "2wl0", registry)
    counts.update(ids)
    colours = np.array(ids, dtype=np.int64).reshape(n, n)
    # chunk over v so the n^3 scratch stays bounded
    chunk = max(1, _SCRATCH_CELLS // max(1, n * n))
    for _ in range(iterations):
        ids = []
        transposed = colours.T[None, :, :]
        for lo in range(0, n, chunk):
            hi = min(n, lo + chunk)
            # packed[v,u,w] = colour(w,u) * span + colour(v,w)
            packed = transposed * _PAIR_SPAN + colours[lo:hi, None, :]
            packed.sort(axis=2)
            rows = np.concatenate(
                [colours[lo:hi, :, None], packed[:, :, ::-1]], axis=2
            ).reshape((hi - lo) * n, n + 1)
            ids.extend(_lookup_rows(rows, None, "2wl", registry))
        counts.update(ids)
        colours = np.array(ids, dtype=np.int64).reshape(n, n)
    return counts


def two_lwl(
    graph: Graph,
    iterations: int,
    registry,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
) -> Counter:
    """Local colour refinement over unordered node pairs.

    Pairs are the C(n,2) two-element node sets; the neighbourhood of {v, u}
    ranges only over w in N(v) | N(u) (excluding v and u themselves, which
    would form degenerate one-element sets) and collects the unordered colour
    pairs {colour{w,u}, colour{v,w}}.
    """
    _check_graph(graph, registry)
    counts: Counter = Counter()
    n = graph.node_count
    npairs = n * (n - 1) // 2
    if npairs == 0:
        return counts
    if npairs > pair_budget:
        raise NodeBudgetExceeded(
            f"C({n},2) = {npairs} unordered pairs exceed budget {pair_budget}"
        )
    cats = np.array(graph.categorical, dtype=np.int64)
    e = _edge_label_matrix(graph)
    iv, iu = np.triu_indices(n, k=1)
    init_rows = np.stack(
        [np.minimum(cats[iv], cats[iu]), np.maximum(cats[iv], cats[iu]), e[iv, iu] + 1],
        axis=1,
    )
    ids = _lookup_rows(init_rows, None, "2lwl0", registry)
    counts.update(ids)
    pair_colours = np.array(ids, dtype=np.int64)

    adjacency = e >= 0
    arange = np.arange(npairs)
    mask = adjacency[iv] | adjacency[iu]
    mask[arange, iv] = False
    mask[arange, iu] = False
    widths = (1 + mask.sum(axis=1)).tolist()
    mask = mask.astype(np.int64)

    full = np.zeros((n, n), dtype=np.int64)
    chunk = max(1, _SCRATCH_CELLS // max(1, n))
    for _ in range(iterations):
        full[iv, iu] = pair_colours
        full[iu, iv] = pair_colours
        ids = []
        for lo in range(0, npairs, chunk):
            hi = min(npairs, lo + chunk)
            first = full[iu[lo:hi]]  # colour{w, u} per pair row, all w
            second = full[iv[lo:hi]]  # colour{v, w}
            packed = (
                np.minimum(first, second) * _PAIR_SPAN + np.maximum(first, second) + 1
            ) * mask[lo:hi]
            packed.sort(axis=1)
            rows = np.concatenate(
                [pair_colours[lo:hi, None], packed[:, ::-1]], axis=1
            )
            ids.extend(_lookup_rows(rows, widths[lo:hi], "2lwl", registry))
        counts.update(ids)
        pair_colours = np.array(ids, dtype=np.int64)
    return counts


KERNEL_FUNCTIONS = {
    "wl": wl,
    "2wl": two_wl,
    "2lwl": two_lwl,
    "iwl": iwl,
    "ccwl": ccwl,
}
