"""Instance-learning-graph encodings and Weisfeiler-Leman kernels for planning."""

from .errors import WlkitError
from .features import Dataset, DatasetEntry, DistinguishReport, FeatureModel
from .graph import Graph, graph_from_json, graph_to_json, to_dot
from .ilg import ColourTable, ILGGenerator
from .kernels import ColourRegistry, ccwl, iwl, two_lwl, two_wl, wl
from .task import (
    BinOp,
    Comparator,
    Const,
    Domain,
    GroundAtom,
    Literal,
    NumericCondition,
    Problem,
    State,
    Symbol,
    Var,
    condition_satisfied,
    evaluate_expression,
    goal_satisfied,
)

__all__ = [
    "BinOp",
    "ColourRegistry",
    "ColourTable",
    "Comparator",
    "Const",
    "Dataset",
    "DatasetEntry",
    "DistinguishReport",
    "Domain",
    "FeatureModel",
    "Graph",
    "GroundAtom",
    "ILGGenerator",
    "Literal",
    "NumericCondition",
    "Problem",
    "State",
    "Symbol",
    "Var",
    "WlkitError",
    "ccwl",
    "condition_satisfied",
    "evaluate_expression",
    "goal_satisfied",
    "graph_from_json",
    "graph_to_json",
    "iwl",
    "to_dot",
    "two_lwl",
    "two_wl",
    "wl",
]

__version__ = "0.1.0"
