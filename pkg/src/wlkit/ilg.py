"""Instance learning graphs for numeric planning tasks.

A (problem, state) pair becomes a graph whose nodes are the objects, the true
propositions and numeric variables of the state, and the goal conditions.
Categorical node colours come from a per-domain colour table; continuous
features carry numeric variable values and the error of unachieved numeric
goals.  Edges connect atoms to their argument objects (label = 1-based
argument position) and numeric goal conditions to their variables (label 0).
"""

from __future__ import annotations

from .errors import (
    ArityMismatch,
    DomainMismatch,
    NodeBudgetExceeded,
    UnassignedGoalFluent,
    UnassignedVariable,
    UnknownSymbol,
    WlkitError,
)
from .graph import Graph
from .task import (
    Comparator,
    Domain,
    GroundAtom,
    Problem,
    State,
    evaluate_expression,
    expr_variables,
)

DEFAULT_NODE_BUDGET = 10**6

# Achievement flags for propositional atoms.
APG = "apg"  # achieved propositional goal
UPG = "upg"  # unachieved propositional goal
APN = "apn"  # achieved propositional non-goal
# Achievement flags for numeric goal conditions.
UNG = "ung"  # unachieved numeric goal
ANG = "ang"  # achieved numeric goal

_COMPARATOR_ORDER = (Comparator.GE, Comparator.GT, Comparator.EQ)


class ColourTable:
    """Deterministic enumeration of a domain's categorical node colours.

    Order: the generic object colour, one colour per constant object, the
    (apg, upg, apn) triple per predicate, one colour per function, then the
    six (comparator, achievement) numeric-goal colours.  All lists follow
    domain declaration order, so ids are stable across runs.
    """

    def __init__(self, domain: Domain):
        self.domain = domain
        descriptors: list[tuple[str, ...]] = [("obj",)]
        for const in domain.constant_objects:
            descriptors.append(("const", const))
        for pred in domain.predicates:
            for flag in (APG, UPG, APN):
                descriptors.append(("pred", pred.name, flag))
        for func in domain.functions:
            descriptors.append(("func", func.name))
        for comp in _COMPARATOR_ORDER:
            for flag in (UNG, ANG):
                descriptors.append(("ngoal", comp.value, flag))
        self.descriptors = descriptors
        self.index = {d: i for i, d in enumerate(descriptors)}

    @property
    def size(self) -> int:
        return len(self.descriptors)

    def object_colour(self, name: str) -> int:
        return self.index.get(("const", name), 0)

    def predicate_colour(self, name: str, flag: str) -> int:
        return self.index[("pred", name, flag)]

    def function_colour(self, name: str) -> int:
        return self.index[("func", name)]

    def numeric_goal_colour(self, comparator: Comparator, flag: str) -> int:
        return self.index[("ngoal", comparator.value, flag)]

    def label(self, colour: int) -> str:
        """Readable name for DOT rendering."""
        d = self.descriptors[colour]
        if d[0] == "obj":
            return "object"
        if d[0] in ("const", "func"):
            return d[1]
        return ":".join(d[1:])

    def labels(self) -> list[str]:
        return [self.label(i) for i in range(self.size)]


class ILGGenerator:
    """Builds instance learning graphs for the states of one problem at a time.

    ``set_problem`` fixes the object and goal-condition node layout; each
    ``to_graph(state)`` call reuses it and appends the state-dependent nodes.
    """

    def __init__(self, domain: Domain, node_budget: int = DEFAULT_NODE_BUDGET):
        self.domain = domain
        self.colour_table = ColourTable(domain)
        self.node_budget = node_budget
        self._predicate_arity = {p.name: p.arity for p in domain.predicates}
        self._function_arity = {f.name: f.arity for f in domain.functions}
        self._problem: Problem | None = None

    def set_problem(self, problem: Problem):
        if problem.domain_name != self.domain.name:
            raise DomainMismatch(
                f"problem is for domain {problem.domain_name!r}, "
                f"generator is for {self.domain.name!r}"
            )
        # Fixed node layout: objects, then goal atoms, then numeric goals.
        object_colours = [
            self.colour_table.object_colour(o) for o in problem.objects
        ]
        goal_atoms: dict[GroundAtom, bool] = {}
        for lit in problem.propositional_goals:
            self._check_atom(lit.atom, self._predicate_arity)
            goal_atoms.setdefault(lit.atom, lit.positive)
        self._problem = problem
        self._object_colours = object_colours
        self._goal_atoms = goal_atoms
        self._goal_atom_ids = {
            atom: len(problem.objects) + i for i, atom in enumerate(goal_atoms)
        }
        self._numeric_goal_vars = [
            expr_variables(c.expr) for c in problem.numeric_goals
        ]

    def _check_atom(self, atom: GroundAtom, arities: dict[str, int]):
        arity = arities.get(atom.symbol)
        if arity is None:
            raise UnknownSymbol(f"undeclared symbol {atom.symbol!r} in {atom}")
        if arity != len(atom.args):
            raise ArityMismatch(
                f"{atom} has {len(atom.args)} arguments, declared arity {arity}"
            )

    def to_graph(self, state: State) -> Graph:
        if self._problem is None:
            raise WlkitError("set_problem must be called before to_graph")
        problem = self._problem
        table = self.colour_table
        object_index = problem.object_index

        colours = list(self._object_colours)
        continuous = [0.0] * len(colours)
        atom_of_node: list[GroundAtom | None] = [None] * len(colours)

        # Goal atom nodes (layout fixed at set_problem); achievement of a
        # negative literal is the inverted membership test.
        for atom, positive in self._goal_atoms.items():
            holds = atom in state.true_propositions
            achieved = holds if positive else not holds
            colours.append(table.predicate_colour(atom.symbol, APG if achieved else UPG))
            continuous.append(0.0)
            atom_of_node.append(atom)

        # Remaining true propositions, in sorted order for determinism.
        for atom in sorted(state.true_propositions):
            if atom in self._goal_atoms:
                continue
            self._check_atom(atom, self._predicate_arity)
            colours.append(table.predicate_colour(atom.symbol, APN))
            continuous.append(0.0)
            atom_of_node.append(atom)

        # Numeric variable nodes carry the state value.
        variable_ids: dict[GroundAtom, int] = {}
        for atom in sorted(state.numeric_assignments):
            self._check_atom(atom, self._function_arity)
            variable_ids[atom] = len(colours)
            colours.append(table.function_colour(atom.symbol))
            continuous.append(float(state.numeric_assignments[atom]))
            atom_of_node.append(atom)

        # Numeric goal nodes: colour encodes (comparator, achieved); the
        # continuous feature is the expression error when unachieved.
        goal_node_edges: list[tuple[int, int, int]] = []
        for cond, variables in zip(problem.numeric_goals, self._numeric_goal_vars):
            try:
                value = evaluate_expression(cond.expr, state)
            except UnassignedVariable as exc:
                raise UnassignedGoalFluent(str(exc)) from None
            achieved = cond.comparator.test(value)
            node = len(colours)
            colours.append(
                table.numeric_goal_colour(cond.comparator, ANG if achieved else UNG)
            )
            continuous.append(0.0 if achieved else value)
            atom_of_node.append(None)
            for var in variables:
                goal_node_edges.append((node, variable_ids[var], 0))

        if len(colours) > self.node_budget:
            raise NodeBudgetExceeded(
                f"graph would have {len(colours)} nodes, budget {self.node_budget}"
            )

        # Atom-to-object edges, label = 1-based argument position; one edge per
        # unordered pair (first position wins for repeated arguments).
        edges: list[tuple[int, int, int]] = []
        seen_pairs: set[tuple[int, int]] = set()
        for node, atom in enumerate(atom_of_node):
            if atom is None:
                continue
            for position, arg in enumerate(atom.args, start=1):
                obj = object_index.get(arg)
                if obj is None:
                    raise UnknownSymbol(f"object {arg!r} in {atom} is not declared")
                pair = (min(node, obj), max(node, obj))
                if pair in seen_pairs:
                    continue
                seen_pairs.add(pair)
                edges.append((node, obj, position))
        edges.extend(goal_node_edges)

        return Graph(colours, continuous, edges)
