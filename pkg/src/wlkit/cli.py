"""Command-line front end.

Subcommands cover the full pipeline: ``graphify`` renders the instance
learning graph of a task/state, ``collect`` builds a feature model from a
dataset, ``embed`` writes embeddings as CSV, ``distinguish`` runs the
label-distinguishability test and ``inspect`` summarises a saved model.
Diagnostics go to stderr; data goes to stdout or ``--out``.  The environment
variable ``WLKIT_NODE_BUDGET`` overrides the node/pair budget guards.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import pddl
from .errors import SchemaError, WlkitError
from .features import FeatureModel
from .graph import graph_to_json, to_dot
from .ilg import DEFAULT_NODE_BUDGET, ILGGenerator


def _node_budget() -> int:
    value = os.environ.get("WLKIT_NODE_BUDGET")
    if value is None:
        return DEFAULT_NODE_BUDGET
    try:
        return int(value)
    except ValueError:
        raise WlkitError(f"WLKIT_NODE_BUDGET={value!r} is not an integer") from None


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _sniff_format(path: str, override: str | None) -> str:
    if override is not None:
        return override
    return "json" if path.endswith(".json") else "pddl"


def _load_domain(path: str, fmt: str | None):
    text = _read(path)
    if _sniff_format(path, fmt) == "pddl":
        return pddl.parse_domain(text, path)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON: {exc}") from exc
    if isinstance(obj, dict) and "domain" in obj:
        obj = obj["domain"]
    return pddl.domain_from_json(obj)


def _load_problem(path: str, fmt: str | None, domain):
    text = _read(path)
    if _sniff_format(path, fmt) == "pddl":
        return pddl.parse_problem(text, domain, path)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON: {exc}") from exc
    if isinstance(obj, dict) and "problem" in obj:
        obj = obj["problem"]
    return pddl.problem_from_json(obj, domain)


def _write_output(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _format_value(value: float) -> str:
    if float(value).is_integer():
        return str(int(value))
    return repr(float(value))


def cmd_graphify(args) -> int:
    domain = _load_domain(args.domain, args.input_format)
    problem = _load_problem(args.problem, args.input_format, domain)
    generator = ILGGenerator(domain, node_budget=_node_budget())
    generator.set_problem(problem)
    if args.state is not None:
        state_obj = json.loads(_read(args.state))
        state = pddl.state_from_json(state_obj, domain)
    else:
        state = problem.initial_state
    graph = generator.to_graph(state)
    if args.format == "dot":
        text = to_dot(graph, generator.colour_table.labels())
    else:
        text = json.dumps(graph_to_json(graph), indent=2) + "\n"
    _write_output(text, args.out)
    return 0


def cmd_collect(args) -> int:
    dataset = pddl.parse_json_dataset(_read(args.dataset))
    budget = _node_budget()
    model = FeatureModel(
        dataset.domain,
        kernel=args.kernel,
        iterations=args.iterations,
        aggregator=args.aggregator,
        node_budget=budget,
        pair_budget=budget,
    )
    model.collect(dataset)
    model.save(args.out)
    print(f"collected_colours {len(model.collected)}")
    print(f"states {dataset.state_count()}")
    return 0


def cmd_embed(args) -> int:
    model = FeatureModel.load(args.model)
    dataset = pddl.parse_json_dataset(_read(args.dataset))
    matrix = model.embed_dataset(dataset)
    labels = None
    if args.with_labels:
        labels = []
        for i, entry in enumerate(dataset.entries):
            if entry.labels is None:
                from .errors import MissingLabels

                raise MissingLabels(f"dataset entry {i} has no labels")
            labels.extend(entry.labels)
    d = matrix.shape[1]
    header = ["problem_index", "state_index"] + [f"f{i}" for i in range(d)]
    if labels is not None:
        header.append("label")
    lines = [",".join(header)]
    row = 0
    for ei, entry in enumerate(dataset.entries):
        for si in range(len(entry.states)):
            cells = [str(ei), str(si)] + [_format_value(v) for v in matrix[row]]
            if labels is not None:
                cells.append(_format_value(labels[row]))
            lines.append(",".join(cells))
            row += 1
    _write_output("\n".join(lines) + "\n", args.out)
    return 0


def cmd_distinguish(args) -> int:
    model = FeatureModel.load(args.model)
    dataset = pddl.parse_json_dataset(_read(args.dataset))
    report = model.distinguish(dataset, tolerance=args.tolerance)
    print(f"pairs_total {report.pairs_total}")
    print(f"pairs_indistinguishable {report.pairs_indistinguishable}")
    return 0


def cmd_inspect(args) -> int:
    model = FeatureModel.load(args.model)
    print(f"kernel {model.kernel}")
    print(f"iterations {model.iterations}")
    if model.aggregator is not None:
        print(f"aggregator {model.aggregator}")
    print(f"colour_table_size {model.colour_table.size}")
    print(f"collected_colours {len(model.collected)}")
    print(f"registry_entries {len(model.registry)}")
    print(f"weights {'present' if model.weights is not None else 'absent'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wlkit",
        description="Instance learning graphs and WL kernels for planning tasks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graphify", help="render the graph of a task/state")
    p.add_argument("--domain", required=True)
    p.add_argument("--problem", required=True)
    p.add_argument("--state", help="state JSON file (default: initial state)")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--input-format", choices=("pddl", "json"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_graphify)

    p = sub.add_parser("collect", help="collect colours over a dataset")
    p.add_argument("--dataset", required=True)
    p.add_argument("--kernel", choices=("wl", "2wl", "2lwl", "iwl", "ccwl"), default="wl")
    p.add_argument("--iterations", type=int, default=2)
    p.add_argument("--aggregator", choices=("sum", "mean", "max"))
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_collect)

    p = sub.add_parser("embed", help="embed a dataset as CSV")
    p.add_argument("--model", required=True)
    p.add_argument("--dataset", required=True)
    p.add_argument("--with-labels", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("distinguish", help="count label-distinct states with equal embeddings")
    p.add_argument("--model", required=True)
    p.add_argument("--dataset", required=True)
    p.add_argument("--tolerance", type=float, default=0.0)
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("inspect", help="summarise a saved model")
    p.add_argument("--model", required=True)
    p.set_defaults(func=cmd_inspect)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (WlkitError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
