"""In-memory model of numeric planning tasks.

A domain declares predicate and function symbols plus constant objects; a
problem grounds them over a set of objects with an initial state and a goal
condition made of propositional literals and numeric comparisons normalised to
``expr {>=,>,=} 0``.  The model is state-centric: action schemata are out of
scope and states are plain truth/value assignments.

All types are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Union

from .errors import (
    DivisionByZero,
    UnassignedGoalFluent,
    UnassignedVariable,
    UnknownSymbol,
    WlkitError,
)


@dataclass(frozen=True)
class Symbol:
    """A lifted predicate or function symbol with a fixed arity."""

    name: str
    arity: int

    def __post_init__(self):
        if self.arity < 0:
            raise WlkitError(f"negative arity for symbol {self.name!r}")


@dataclass(frozen=True, order=True)
class GroundAtom:
    """A predicate or function symbol instantiated with object names."""

    symbol: str
    args: tuple[str, ...] = ()

    def __str__(self):
        if not self.args:
            return self.symbol
        return f"{self.symbol}({','.join(self.args)})"


class Comparator(Enum):
    """Comparison of a numeric expression against zero."""

    GE = "ge"
    GT = "gt"
    EQ = "eq"

    def test(self, value: float) -> bool:
        if self is Comparator.GE:
            return value >= 0.0
        if self is Comparator.GT:
            return value > 0.0
        # Exact comparison by design: tolerances are a harness concern.
        return value == 0.0


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    atom: GroundAtom


@dataclass(frozen=True)
class BinOp:
    op: str  # one of "+", "-", "*", "/"
    left: "Expr"
    right: "Expr"

    def __post_init__(self):
        if self.op not in ("+", "-", "*", "/"):
            raise WlkitError(f"unknown operator {self.op!r}")


Expr = Union[Const, Var, BinOp]


def expr_variables(expr: Expr) -> list[GroundAtom]:
    """Distinct numeric variables of an expression, in first-occurrence order."""
    seen: dict[GroundAtom, None] = {}

    def walk(e: Expr):
        if isinstance(e, Var):
            seen.setdefault(e.atom, None)
        elif isinstance(e, BinOp):
            walk(e.left)
            walk(e.right)

    walk(expr)
    return list(seen)


@dataclass(frozen=True)
class NumericCondition:
    """A numeric goal condition ``expr comparator 0``."""

    expr: Expr
    comparator: Comparator


@dataclass(frozen=True)
class Literal:
    """A signed propositional goal literal."""

    atom: GroundAtom
    positive: bool = True


@dataclass(frozen=True)
class Domain:
    """Shared vocabulary of a family of tasks.

    Declaration order of predicates, functions and constants is preserved
    verbatim; it anchors the categorical colour enumeration downstream.
    """

    name: str
    predicates: tuple[Symbol, ...] = ()
    functions: tuple[Symbol, ...] = ()
    constant_objects: tuple[str, ...] = ()

    def __post_init__(self):
        for kind, names in (
            ("predicate", [p.name for p in self.predicates]),
            ("function", [f.name for f in self.functions]),
            ("constant", list(self.constant_objects)),
        ):
            if len(set(names)) != len(names):
                raise WlkitError(f"duplicate {kind} name in domain {self.name!r}")


@dataclass(frozen=True)
class State:
    """Truth assignment (true propositions) plus numeric variable values."""

    true_propositions: frozenset[GroundAtom] = frozenset()
    numeric_assignments: Mapping[GroundAtom, float] = field(default_factory=dict)

    def value(self, atom: GroundAtom) -> float:
        try:
            return self.numeric_assignments[atom]
        except KeyError:
            raise UnassignedVariable(f"numeric variable {atom} has no value") from None


@dataclass(frozen=True)
class Problem:
    """A grounded task: objects, goal condition and initial state."""

    domain_name: str
    objects: tuple[str, ...]
    propositional_goals: tuple[Literal, ...] = ()
    numeric_goals: tuple[NumericCondition, ...] = ()
    initial_state: State = State()
    # Dense object ids; derived, excluded from equality.
    object_index: dict[str, int] = field(
        default_factory=dict, compare=False, repr=False
    )

    def __post_init__(self):
        if len(set(self.objects)) != len(self.objects):
            raise WlkitError("duplicate object name in problem")
        index = {name: i for i, name in enumerate(self.objects)}
        object.__setattr__(self, "object_index", index)

        def check_args(atom: GroundAtom):
            for arg in atom.args:
                if arg not in index:
                    raise UnknownSymbol(f"object {arg!r} in {atom} is not declared")

        for lit in self.propositional_goals:
            check_args(lit.atom)
        for atom in self.initial_state.true_propositions:
            check_args(atom)
        for atom in self.initial_state.numeric_assignments:
            check_args(atom)
        assigned = self.initial_state.numeric_assignments
        for cond in self.numeric_goals:
            for var in expr_variables(cond.expr):
                check_args(var)
                if var not in assigned:
                    raise UnassignedGoalFluent(
                        f"goal expression variable {var} is not assigned in the "
                        f"initial state"
                    )


def evaluate_expression(expr: Expr, state: State) -> float:
    """Value of an arithmetic expression in a state.

    Raises UnassignedVariable for a leaf with no value and DivisionByZero when
    a divisor evaluates to zero.
    """
    if isinstance(expr, Const):
        return float(expr.value)
    if isinstance(expr, Var):
        return float(state.value(expr.atom))
    left = evaluate_expression(expr.left, state)
    right = evaluate_expression(expr.right, state)
    if expr.op == "+":
        return left + right
    if expr.op == "-":
        return left - right
    if expr.op == "*":
        return left * right
    if right == 0.0:
        raise DivisionByZero(f"division by zero while evaluating {expr}")
    return left / right


def condition_satisfied(cond: NumericCondition, state: State) -> bool:
    """Whether ``[expr]^state comparator 0`` holds."""
    value = evaluate_expression(cond.expr, state)
    if math.isnan(value):
        return False
    return cond.comparator.test(value)


def goal_satisfied(problem: Problem, state: State) -> bool:
    """Whether every propositional literal and numeric condition of the goal holds."""
    for lit in problem.propositional_goals:
        if (lit.atom in state.true_propositions) != lit.positive:
            return False
    return all(condition_satisfied(c, state) for c in problem.numeric_goals)
