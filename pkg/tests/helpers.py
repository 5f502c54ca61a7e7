"""Shared fixtures: graph builders, random task corpora, toy Blocksworld."""

import random
from collections import deque

from wlkit import (
    BinOp,
    Comparator,
    Const,
    Dataset,
    DatasetEntry,
    Domain,
    Graph,
    GroundAtom,
    ILGGenerator,
    Literal,
    NumericCondition,
    Problem,
    State,
    Symbol,
    Var,
)

# --- plain graph builders ---


def cycle_graph(n, colour=0, label=0):
    return Graph([colour] * n, edges=[(i, (i + 1) % n, label) for i in range(n)])


def complete_graph(n, colour=0, label=0):
    edges = [(i, j, label) for i in range(n) for j in range(i + 1, n)]
    return Graph([colour] * n, edges=edges)


def disjoint_union(a, b):
    off = a.node_count
    cats = list(a.categorical) + list(b.categorical)
    cont = list(a.continuous) + list(b.continuous)
    edges = a.edges() + [(u + off, v + off, l) for u, v, l in b.edges()]
    return Graph(cats, cont, edges)


def permute_graph(g, perm):
    """Relabel node v as perm[v]."""
    n = g.node_count
    cats = [0] * n
    cont = [0.0] * n
    for v in range(n):
        cats[perm[v]] = g.categorical[v]
        cont[perm[v]] = g.continuous[v]
    edges = [(perm[u], perm[v], l) for u, v, l in g.edges()]
    return Graph(cats, cont, edges)


def random_graph(rng, n, num_colours=3, num_labels=2, edge_prob=0.3):
    cats = [rng.randrange(num_colours) for _ in range(n)]
    cont = [round(rng.uniform(-2, 2), 3) for _ in range(n)]
    edges = [
        (i, j, rng.randrange(num_labels))
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < edge_prob
    ]
    return Graph(cats, cont, edges)


# --- random planning tasks and their graphs ---


def random_domain(rng, name="rnd"):
    preds = tuple(
        Symbol(f"p{i}", rng.choice([0, 1, 1, 2, 2])) for i in range(rng.randint(1, 3))
    )
    funcs = tuple(Symbol(f"f{i}", rng.choice([0, 1, 1])) for i in range(rng.randint(0, 2)))
    consts = tuple(f"k{i}" for i in range(rng.randint(0, 2)))
    return Domain(name, preds, funcs, consts)


def _ground_atoms(symbol, objects, rng, count):
    atoms = set()
    for _ in range(count * 3):
        if len(atoms) >= count:
            break
        args = tuple(rng.choice(objects) for _ in range(symbol.arity))
        atoms.add(GroundAtom(symbol.name, args))
    return sorted(atoms)


def random_task(rng, domain=None, n_objects=None):
    """A consistent (domain, problem, state) triple; state == initial state."""
    if domain is None:
        domain = random_domain(rng)
    if n_objects is None:
        n_objects = rng.randint(2, 6)
    objects = list(domain.constant_objects) + [f"o{i}" for i in range(n_objects)]

    props = set()
    for pred in domain.predicates:
        props.update(_ground_atoms(pred, objects, rng, rng.randint(0, 3)))
    fluents = {}
    for func in domain.functions:
        for atom in _ground_atoms(func, objects, rng, rng.randint(0, 3)):
            fluents[atom] = float(rng.randint(-3, 9))

    literals = []
    seen = set()
    for pred in domain.predicates:
        for atom in _ground_atoms(pred, objects, rng, rng.randint(0, 2)):
            if atom not in seen:
                seen.add(atom)
                literals.append(Literal(atom, positive=rng.random() < 0.9))

    numeric = []
    assigned = sorted(fluents)
    if assigned:
        for _ in range(rng.randint(0, 2)):
            var = Var(rng.choice(assigned))
            expr = BinOp("-", var, Const(float(rng.randint(-2, 6))))
            comparator = rng.choice(list(Comparator))
            numeric.append(NumericCondition(expr, comparator))

    state = State(frozenset(props), fluents)
    problem = Problem(
        domain_name=domain.name,
        objects=tuple(objects),
        propositional_goals=tuple(literals),
        numeric_goals=tuple(numeric),
        initial_state=state,
    )
    return domain, problem, state


def random_ilg(rng, max_nodes=40):
    """A random instance learning graph with at most max_nodes nodes."""
    while True:
        domain, problem, state = random_task(rng)
        gen = ILGGenerator(domain)
        gen.set_problem(problem)
        g = gen.to_graph(state)
        if 1 <= g.node_count <= max_nodes:
            return g


def big_domain():
    return Domain(
        "big",
        predicates=(Symbol("p", 2), Symbol("q", 1)),
        functions=(Symbol("f", 1),),
    )


def big_random_ilg(rng, n_objects=25):
    """A ~100-node instance learning graph for throughput checks."""
    domain = big_domain()
    objects = tuple(f"o{i}" for i in range(n_objects))
    props = set()
    while len(props) < 50:
        props.add(GroundAtom("p", (rng.choice(objects), rng.choice(objects))))
        props.add(GroundAtom("q", (rng.choice(objects),)))
    fluents = {GroundAtom("f", (o,)): float(rng.randint(0, 9)) for o in objects[:12]}
    goals = tuple(
        Literal(GroundAtom("p", (rng.choice(objects), rng.choice(objects))))
        for _ in range(8)
    )
    numeric = tuple(
        NumericCondition(
            BinOp("-", Var(atom), Const(float(rng.randint(0, 9)))),
            rng.choice(list(Comparator)),
        )
        for atom in list(fluents)[:3]
    )
    state = State(frozenset(props), fluents)
    problem = Problem(
        domain_name="big",
        objects=objects,
        propositional_goals=goals,
        numeric_goals=numeric,
        initial_state=state,
    )
    gen = ILGGenerator(domain)
    gen.set_problem(problem)
    return gen.to_graph(state)


def mutate_state(rng, domain, problem, state):
    """A sibling state: same numeric assignments, perturbed propositions."""
    props = set(state.true_propositions)
    if props and rng.random() < 0.5:
        props.remove(rng.choice(sorted(props)))
    pred = rng.choice(domain.predicates) if domain.predicates else None
    if pred is not None:
        args = tuple(rng.choice(problem.objects) for _ in range(pred.arity))
        props.add(GroundAtom(pred.name, args))
    return State(frozenset(props), dict(state.numeric_assignments))


# --- the worked ccBlocksworld-style example ---


def cc_blocks_domain():
    return Domain(
        "ccblocks",
        predicates=(Symbol("on", 2),),
        functions=(Symbol("capacity", 1),),
    )


def cc_blocks_task(capacity=3.0):
    """Five objects, three true props, two unachieved goals, two capacities."""
    domain = cc_blocks_domain()

    def on(x, y):
        return GroundAtom("on", (x, y))

    state = State(
        frozenset({on("a", "x"), on("b", "y"), on("d", "b")}),
        {GroundAtom("capacity", ("x",)): capacity, GroundAtom("capacity", ("y",)): capacity},
    )
    problem = Problem(
        domain_name="ccblocks",
        objects=("a", "b", "d", "x", "y"),
        propositional_goals=(Literal(on("a", "b")), Literal(on("b", "x"))),
        initial_state=state,
    )
    return domain, problem, state


# --- toy Blocksworld with exhaustive cost-to-go ---


def blocks_domain():
    return Domain(
        "blocksworld",
        predicates=(Symbol("on", 2), Symbol("ontable", 1), Symbol("clear", 1)),
    )


def _config_atoms(config):
    atoms = set()
    for tower in config:
        atoms.add(GroundAtom("ontable", (tower[0],)))
        atoms.add(GroundAtom("clear", (tower[-1],)))
        for below, above in zip(tower, tower[1:]):
            atoms.add(GroundAtom("on", (above, below)))
    return frozenset(atoms)


def _successors(config):
    towers = sorted(config)
    for i, tower in enumerate(towers):
        top = tower[-1]
        rest = [t for j, t in enumerate(towers) if j != i]
        if len(tower) > 1:
            yield frozenset([*rest, tower[:-1], (top,)])
        for j, other in enumerate(towers):
            if j == i:
                continue
            moved = [t for k, t in enumerate(towers) if k not in (i, j)]
            if len(tower) > 1:
                moved.append(tower[:-1])
            moved.append((*other, top))
            yield frozenset(moved)


def all_block_configs(blocks):
    """Every tower configuration of the given blocks (13 for three blocks)."""
    configs = set()

    def partitions(items):
        if not items:
            yield []
            return
        first = items[0]
        rest = items[1:]
        for sub in partitions(rest):
            # first starts its own tower, inserted at any position in any tower
            yield [*sub, (first,)]
            for i, tower in enumerate(sub):
                for pos in range(len(tower) + 1):
                    new_tower = (*tower[:pos], first, *tower[pos:])
                    yield [*sub[:i], new_tower, *sub[i + 1 :]]

    for p in partitions(list(blocks)):
        configs.add(frozenset(p))
    return sorted(configs, key=lambda c: sorted(c))


def cost_to_go(blocks=("a", "b", "c"), goal_tower=("c", "b", "a")):
    """Exact distance of every configuration to the goal tower, by BFS."""
    goal = frozenset([tuple(goal_tower)])
    dist = {goal: 0}
    frontier = deque([goal])
    while frontier:
        config = frontier.popleft()
        for nxt in _successors(config):
            if nxt not in dist:
                dist[nxt] = dist[config] + 1
                frontier.append(nxt)
    return dist


def toy_blocks_dataset():
    """All 13 three-block configurations labelled with exact cost-to-go."""
    domain = blocks_domain()
    dist = cost_to_go()
    configs = all_block_configs(("a", "b", "c"))
    assert len(configs) == 13
    start = max(configs, key=lambda c: dist[c])
    problem = Problem(
        domain_name="blocksworld",
        objects=("a", "b", "c"),
        propositional_goals=(
            Literal(GroundAtom("on", ("a", "b"))),
            Literal(GroundAtom("on", ("b", "c"))),
        ),
        initial_state=State(_config_atoms(start)),
    )
    states = [State(_config_atoms(c)) for c in configs]
    labels = [float(dist[c]) for c in configs]
    return Dataset(domain, [DatasetEntry(problem, states, labels)])


def seeded_rng(seed):
    return random.Random(seed)
