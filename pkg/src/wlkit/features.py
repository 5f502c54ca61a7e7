"""Feature models: colour collection, fixed-size embeddings, persistence.

A :class:`FeatureModel` wires one kernel over instance learning graphs of a
domain.  ``collect`` runs the kernel in collect mode over every state of a
dataset and records the union of output colours C (first-seen order, stable
under dataset extension).  ``embed`` then maps any state to the vector of
per-colour occurrence counts; colours outside C are ignored.  For the
continuous kernel the vector carries a second block with the per-colour
aggregated continuous features.  Models serialise to a readable JSON file that
round-trips byte-identically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    CorruptRegistry,
    DimensionMismatch,
    DomainMismatch,
    MissingLabels,
    ModelNotCollected,
    NoWeights,
    SchemaError,
    SchemaVersionMismatch,
    WlkitError,
)
from .graph import Graph
from .ilg import DEFAULT_NODE_BUDGET, ILGGenerator
from .kernels import (
    AGGREGATORS,
    DEFAULT_PAIR_BUDGET,
    ColourRegistry,
    ccwl,
    iwl,
    key_from_canonical,
    key_to_canonical,
    two_lwl,
    two_wl,
    wl,
)
from .task import Domain, Problem, State

SCHEMA_VERSION = 1
KERNEL_KINDS = ("wl", "2wl", "2lwl", "iwl", "ccwl")


@dataclass
class DatasetEntry:
    """One problem with a list of states and optional per-state labels."""

    problem: Problem
    states: list[State]
    labels: list[float] | None = None

    def __post_init__(self):
        if self.labels is not None and len(self.labels) != len(self.states):
            raise WlkitError(
                f"{len(self.labels)} labels for {len(self.states)} states"
            )


@dataclass
class Dataset:
    """A domain with problems, states, and optional cost-to-go labels."""

    domain: Domain
    entries: list[DatasetEntry]

    def state_count(self) -> int:
        return sum(len(e.states) for e in self.entries)


@dataclass
class DistinguishReport:
    """Outcome of a distinguishability test; 0 indistinguishable pairs is best."""

    pairs_total: int
    pairs_indistinguishable: int
    offending: list[tuple[tuple[int, int], tuple[int, int]]]


class FeatureModel:
    """Kernel configuration plus collected colour vocabulary and optional weights."""

    def __init__(
        self,
        domain: Domain,
        kernel: str = "wl",
        iterations: int = 2,
        aggregator: str | None = None,
        node_budget: int = DEFAULT_NODE_BUDGET,
        pair_budget: int = DEFAULT_PAIR_BUDGET,
    ):
        if kernel not in KERNEL_KINDS:
            raise WlkitError(f"unknown kernel kind {kernel!r}")
        if iterations < 0:
            raise WlkitError("iterations must be >= 0")
        if kernel == "ccwl":
            aggregator = aggregator or "sum"
            if aggregator not in AGGREGATORS:
                raise WlkitError(f"unknown aggregator {aggregator!r}")
        elif aggregator is not None:
            raise WlkitError(f"aggregator is only valid for ccwl, not {kernel!r}")
        self.domain = domain
        self.kernel = kernel
        self.iterations = iterations
        self.aggregator = aggregator
        self.pair_budget = pair_budget
        self.generator = ILGGenerator(domain, node_budget=node_budget)
        self.colour_table = self.generator.colour_table
        self.registry = ColourRegistry(self.colour_table.size)
        self.collected: list[int] = []
        self._collected_set: set[int] = set()
        self._collect_ran = False
        self.weights: np.ndarray | None = None
        self.bias: float = 0.0

    # --- kernel plumbing ---

    def _run_kernel(self, graph: Graph, registry):
        if self.kernel == "wl":
            return wl(graph, self.iterations, registry), None
        if self.kernel == "iwl":
            return iwl(graph, self.iterations, registry), None
        if self.kernel == "2wl":
            return two_wl(graph, self.iterations, registry, self.pair_budget), None
        if self.kernel == "2lwl":
            return two_lwl(graph, self.iterations, registry, self.pair_budget), None
        return ccwl(graph, self.iterations, registry, self.aggregator)

    def _check_domain(self, domain: Domain):
        if domain != self.domain:
            raise DomainMismatch(
                f"model is for domain {self.domain.name!r}, input is for {domain.name!r}"
            )

    # --- collection ---

    def collect_graphs(self, graphs) -> None:
        """Union the kernel output colours of ``graphs`` into C (collect mode)."""
        for graph in graphs:
            counts, _ = self._run_kernel(graph, self.registry)
            for colour in sorted(counts):
                if colour not in self._collected_set:
                    self._collected_set.add(colour)
                    self.collected.append(colour)
        self._collect_ran = True

    def collect(self, dataset: Dataset) -> None:
        """Collect colours over every state of the dataset, in serial order."""
        self._check_domain(dataset.domain)
        for entry in dataset.entries:
            self.generator.set_problem(entry.problem)
            self.collect_graphs(self.generator.to_graph(s) for s in entry.states)
        self._collect_ran = True

    @property
    def feature_count(self) -> int:
        return len(self.collected) * (2 if self.kernel == "ccwl" else 1)

    # --- embedding ---

    def embed_graph(self, graph: Graph) -> np.ndarray:
        if not self._collect_ran:
            raise ModelNotCollected("collect() must run before embedding")
        counts, fclr = self._run_kernel(graph, self.registry.frozen())
        d = len(self.collected)
        out = np.zeros(self.feature_count, dtype=np.float64)
        for i, colour in enumerate(self.collected):
            out[i] = counts.get(colour, 0)
            if fclr is not None:
                out[d + i] = fclr.get(colour, 0.0)
        return out

    def embed_state(self, problem: Problem, state: State) -> np.ndarray:
        self.generator.set_problem(problem)
        return self.embed_graph(self.generator.to_graph(state))

    def embed_dataset(self, dataset: Dataset) -> np.ndarray:
        """One embedding row per state, in dataset serial order."""
        self._check_domain(dataset.domain)
        if not self._collect_ran:
            raise ModelNotCollected("collect() must run before embedding")
        rows = []
        for entry in dataset.entries:
            self.generator.set_problem(entry.problem)
            for state in entry.states:
                rows.append(self.embed_graph(self.generator.to_graph(state)))
        return np.array(rows, dtype=np.float64).reshape(len(rows), self.feature_count)

    # --- prediction ---

    def set_weights(self, weights, bias: float = 0.0) -> None:
        weights = np.asarray(weights, dtype=np.float64)
        if weights.ndim != 1 or len(weights) != self.feature_count:
            raise DimensionMismatch(
                f"expected {self.feature_count} weights, got {weights.shape}"
            )
        self.weights = weights
        self.bias = float(bias)

    def predict(self, problem: Problem, state: State) -> float:
        if self.weights is None:
            raise NoWeights("model has no weights")
        x = self.embed_state(problem, state)
        if len(x) != len(self.weights):
            raise DimensionMismatch(
                f"model has {len(self.weights)} weights but {len(x)} features"
            )
        return float(np.dot(self.weights, x) + self.bias)

    # --- distinguishability ---

    def distinguish(self, dataset: Dataset, tolerance: float = 0.0) -> DistinguishReport:
        """Count state pairs with different labels but equal embeddings.

        Equal means component-wise |x_i - x_j| <= tolerance; the default 0
        compares count vectors exactly.
        """
        if tolerance < 0:
            raise WlkitError("tolerance must be >= 0")
        positions = []
        labels = []
        for ei, entry in enumerate(dataset.entries):
            if entry.labels is None:
                raise MissingLabels(f"dataset entry {ei} has no labels")
            for si in range(len(entry.states)):
                positions.append((ei, si))
                labels.append(entry.labels[si])
        matrix = self.embed_dataset(dataset)
        y = np.asarray(labels)
        n = len(positions)
        offending = []
        for i in range(n - 1):
            if matrix.shape[1] == 0:
                close = np.ones(n - i - 1, dtype=bool)
            else:
                close = np.max(np.abs(matrix[i + 1 :] - matrix[i]), axis=1) <= tolerance
            for j in np.nonzero(close & (y[i + 1 :] != y[i]))[0]:
                offending.append((positions[i], positions[i + 1 + j]))
        return DistinguishReport(n * (n - 1) // 2, len(offending), offending)

    # --- persistence ---

    def to_json(self) -> dict:
        if not self._collect_ran:
            raise ModelNotCollected("collect() must run before saving")
        return {
            "schema_version": SCHEMA_VERSION,
            "domain": _domain_json(self.domain),
            "kernel": self.kernel,
            "iterations": self.iterations,
            "aggregator": self.aggregator,
            "colour_table": [list(d) for d in self.colour_table.descriptors],
            "registry": [
                [key_to_canonical(key), colour]
                for key, colour in self.registry.entries()
            ],
            "collected": list(self.collected),
            "weights": None if self.weights is None else [float(w) for w in self.weights],
            "bias": None if self.weights is None else self.bias,
        }

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(self.to_json(), indent=2) + "\n")

    @classmethod
    def from_json(cls, obj: dict) -> "FeatureModel":
        if not isinstance(obj, dict):
            raise SchemaError("model file must hold a JSON object")
        if obj.get("schema_version") != SCHEMA_VERSION:
            raise SchemaVersionMismatch(
                f"unsupported schema version {obj.get('schema_version')!r}"
            )
        if obj.get("kernel") not in KERNEL_KINDS:
            raise SchemaVersionMismatch(f"unknown kernel kind {obj.get('kernel')!r}")
        try:
            domain = _domain_from_json(obj["domain"])
            model = cls(
                domain,
                kernel=obj["kernel"],
                iterations=int(obj["iterations"]),
                aggregator=obj["aggregator"],
            )
            table_json = [tuple(d) for d in obj["colour_table"]]
            registry_entries = [
                (key_from_canonical(key), int(colour)) for key, colour in obj["registry"]
            ]
            collected = [int(c) for c in obj["collected"]]
            weights = obj["weights"]
            bias = obj["bias"]
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"malformed model file: {exc}") from exc
        if table_json != [tuple(d) for d in model.colour_table.descriptors]:
            raise SchemaError("colour table does not match the domain declaration")
        base = model.colour_table.size
        ids = [colour for _, colour in registry_entries]
        keys = [key for key, _ in registry_entries]
        if len(set(ids)) != len(ids) or len(set(keys)) != len(keys):
            raise CorruptRegistry("registry key table is not injective")
        if any(colour < base + 2 for colour in ids):
            raise CorruptRegistry("registry id collides with reserved colours")
        model.registry = ColourRegistry.from_entries(base, registry_entries)
        known = set(ids)
        for colour in collected:
            if not (colour < base or colour == base or colour in known):
                raise CorruptRegistry(f"collected colour {colour} unknown to registry")
        if len(set(collected)) != len(collected):
            raise CorruptRegistry("collected colour list has duplicates")
        model.collected = collected
        model._collected_set = set(collected)
        model._collect_ran = True
        if weights is not None:
            model.set_weights(weights, 0.0 if bias is None else float(bias))
        return model

    @classmethod
    def load(cls, path) -> "FeatureModel":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"invalid JSON in model file: {exc}") from exc
        return cls.from_json(obj)


def _domain_json(domain: Domain) -> dict:
    return {
        "name": domain.name,
        "predicates": [[p.name, p.arity] for p in domain.predicates],
        "functions": [[f.name, f.arity] for f in domain.functions],
        "constants": list(domain.constant_objects),
    }


def _domain_from_json(obj: dict) -> Domain:
    from .task import Symbol

    try:
        return Domain(
            str(obj["name"]),
            tuple(Symbol(str(n), int(a)) for n, a in obj["predicates"]),
            tuple(Symbol(str(n), int(a)) for n, a in obj["functions"]),
            tuple(str(c) for c in obj["constants"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed domain object: {exc}") from exc


