"""PDDL-subset and canonical-JSON front ends.

The PDDL reader accepts the state-centric fragment this toolkit needs:
``:predicates``, ``:functions``, ``:constants`` and ``:types`` in domains
(types are erased after arity checking), and ``:objects``, ``:init`` and a
conjunctive ``:goal`` in problems.  ``:action`` bodies are skipped wholesale.
Numeric goal comparisons are normalised to ``expr {>=,>,=} 0`` with
``expr = lhs - rhs`` (the subtraction is dropped when the right side is the
literal 0, so pretty-printing and reparsing is a fixed point).

The JSON reader/writer implements the canonical task and dataset schemas; see
the README for the exact key layout.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    ArityMismatch,
    DomainMismatch,
    DuplicateSymbol,
    ParseError,
    SchemaError,
    UnknownSymbol,
    UnsupportedRequirement,
)
from .features import Dataset, DatasetEntry
from .task import (
    BinOp,
    Comparator,
    Const,
    Domain,
    Expr,
    GroundAtom,
    Literal,
    NumericCondition,
    Problem,
    State,
    Symbol,
    Var,
    expr_variables,
)

SUPPORTED_REQUIREMENTS = {
    ":strips",
    ":typing",
    ":numeric-fluents",
    ":negative-preconditions",
    ":equality",
}

_COMPARISON_OPS = {">=", ">", "=", "<=", "<"}
_ARITHMETIC_OPS = {"+", "-", "*", "/"}


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    column: int

    def __str__(self):
        return f"{self.file}:{self.line}:{self.column}"


class _Token(NamedTuple):
    text: str
    span: SourceSpan


@dataclass
class _SExpr:
    items: list
    span: SourceSpan


def _tokenize(text: str, filename: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == ";":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch in "()":
            tokens.append(_Token(ch, SourceSpan(filename, line, col)))
            col += 1
            i += 1
            continue
        start = i
        start_col = col
        while i < n and not text[i].isspace() and text[i] not in "();":
            i += 1
            col += 1
        # PDDL identifiers are case-insensitive; normalise to lower case.
        tokens.append(_Token(text[start:i].lower(), SourceSpan(filename, line, start_col)))
    return tokens


def _parse_sexpr(tokens: list[_Token], filename: str) -> _SExpr:
    pos = 0

    def parse_node():
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of input", SourceSpan(filename, 1, 1))
        tok = tokens[pos]
        pos += 1
        if tok.text == "(":
            items = []
            while True:
                if pos >= len(tokens):
                    raise ParseError("unbalanced parenthesis", tok.span)
                if tokens[pos].text == ")":
                    pos += 1
                    return _SExpr(items, tok.span)
                items.append(parse_node())
        if tok.text == ")":
            raise ParseError("unexpected ')'", tok.span)
        return tok

    node = parse_node()
    if pos != len(tokens):
        raise ParseError("trailing tokens after expression", tokens[pos].span)
    if not isinstance(node, _SExpr):
        raise ParseError("expected a parenthesised expression", node.span)
    return node


def _head(node: _SExpr) -> str:
    if node.items and isinstance(node.items[0], _Token):
        return node.items[0].text
    return ""


def _expect_define(tree: _SExpr, kind: str, filename: str) -> tuple[str, list[_SExpr]]:
    if _head(tree) != "define" or len(tree.items) < 2:
        raise ParseError(f"expected (define ({kind} ...) ...)", tree.span)
    header = tree.items[1]
    if not isinstance(header, _SExpr) or _head(header) != kind or len(header.items) != 2:
        raise ParseError(f"expected ({kind} <name>) header", tree.span)
    name = header.items[1]
    if not isinstance(name, _Token):
        raise ParseError(f"{kind} name must be an identifier", header.span)
    sections = []
    for section in tree.items[2:]:
        if not isinstance(section, _SExpr):
            raise ParseError("expected a (:<section> ...) form", tree.span)
        sections.append(section)
    return name.text, sections


def _strip_types(tokens: list, span: SourceSpan) -> list[_Token]:
    """Drop '- <type>' annotations from a typed list of tokens."""
    out = []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if not isinstance(tok, _Token):
            raise ParseError("expected an identifier in typed list", span)
        if tok.text == "-":
            i += 2  # skip the type name
            continue
        out.append(tok)
        i += 1
    return out


def _declaration_arity(decl: _SExpr) -> int:
    params = _strip_types(decl.items[1:], decl.span)
    for p in params:
        if not p.text.startswith("?"):
            raise ParseError(f"expected parameter, got {p.text!r}", p.span)
    return len(params)


def parse_domain(text: str, filename: str = "<domain>") -> Domain:
    """Parse a PDDL domain; action bodies are skipped, types erased."""
    tree = _parse_sexpr(_tokenize(text, filename), filename)
    name, sections = _expect_define(tree, "domain", filename)
    predicates: list[Symbol] = []
    functions: list[Symbol] = []
    constants: list[str] = []
    seen: set[str] = set()

    def declare(symbols: list[Symbol], sym: str, arity: int, span: SourceSpan):
        if sym in seen:
            raise DuplicateSymbol(f"symbol {sym!r} declared twice", span)
        seen.add(sym)
        symbols.append(Symbol(sym, arity))

    for section in sections:
        keyword = _head(section)
        if keyword == ":requirements":
            for flag in section.items[1:]:
                if not isinstance(flag, _Token) or flag.text not in SUPPORTED_REQUIREMENTS:
                    text_ = flag.text if isinstance(flag, _Token) else "?"
                    raise UnsupportedRequirement(
                        f"requirement {text_!r} is outside the supported subset",
                        flag.span if isinstance(flag, _Token) else section.span,
                    )
        elif keyword == ":types":
            continue  # types are erased
        elif keyword == ":constants":
            for tok in _strip_types(section.items[1:], section.span):
                if tok.text in seen:
                    raise DuplicateSymbol(f"constant {tok.text!r} declared twice", tok.span)
                seen.add(tok.text)
                constants.append(tok.text)
        elif keyword == ":predicates":
            for decl in section.items[1:]:
                if not isinstance(decl, _SExpr) or not decl.items:
                    raise ParseError("expected (name ?args...) declaration", section.span)
                declare(predicates, _head(decl), _declaration_arity(decl), decl.span)
        elif keyword == ":functions":
            items = section.items[1:]
            i = 0
            while i < len(items):
                item = items[i]
                if isinstance(item, _Token) and item.text == "-":
                    i += 2  # '- number' annotation
                    continue
                if not isinstance(item, _SExpr) or not item.items:
                    raise ParseError("expected (name ?args...) declaration", section.span)
                declare(functions, _head(item), _declaration_arity(item), item.span)
                i += 1
        elif keyword == ":action":
            continue  # state-centric: transition model is not modelled
        else:
            raise ParseError(f"unsupported domain section {keyword!r}", section.span)
    return Domain(name, tuple(predicates), tuple(functions), tuple(constants))


class _ProblemReader:
    def __init__(self, domain: Domain, filename: str):
        self.domain = domain
        self.filename = filename
        self.predicates = {p.name: p.arity for p in domain.predicates}
        self.functions = {f.name: f.arity for f in domain.functions}
        self.objects: list[str] = list(domain.constant_objects)

    def atom(self, node: _SExpr, arities: dict[str, int], kind: str) -> GroundAtom:
        head = _head(node)
        if head not in arities:
            raise UnknownSymbol(f"{node.span}: {head!r} is not a declared {kind}")
        args = []
        for tok in node.items[1:]:
            if not isinstance(tok, _Token):
                raise ParseError("atom arguments must be object names", node.span)
            if tok.text not in self.object_set:
                raise UnknownSymbol(f"{tok.span}: object {tok.text!r} is not declared")
            args.append(tok.text)
        if len(args) != arities[head]:
            raise ArityMismatch(
                f"{node.span}: {head} expects {arities[head]} arguments, got {len(args)}"
            )
        return GroundAtom(head, tuple(args))

    def mentions_fluent(self, node) -> bool:
        if isinstance(node, _Token):
            return node.text in self.functions
        head = _head(node)
        if head in _ARITHMETIC_OPS:
            return any(self.mentions_fluent(child) for child in node.items[1:])
        return head in self.functions

    def expr(self, node) -> Expr:
        if isinstance(node, _Token):
            try:
                return Const(float(node.text))
            except ValueError:
                pass
            if self.functions.get(node.text) == 0:
                return Var(GroundAtom(node.text))
            raise UnknownSymbol(
                f"{node.span}: {node.text!r} is neither a number nor a 0-ary function"
            )
        head = _head(node)
        operands = node.items[1:]
        if head in ("+", "*"):
            if not operands:
                raise ParseError(f"({head}) needs at least one operand", node.span)
            result = self.expr(operands[0])
            for child in operands[1:]:
                result = BinOp(head, result, self.expr(child))
            return result
        if head == "-":
            if len(operands) == 1:
                return BinOp("-", Const(0.0), self.expr(operands[0]))
            if not operands:
                raise ParseError("(-) needs operands", node.span)
            result = self.expr(operands[0])
            for child in operands[1:]:
                result = BinOp("-", result, self.expr(child))
            return result
        if head == "/":
            if len(operands) != 2:
                raise ParseError("(/) takes exactly two operands", node.span)
            return BinOp("/", self.expr(operands[0]), self.expr(operands[1]))
        return Var(self.atom(node, self.functions, "function"))

    def comparison(self, node: _SExpr) -> NumericCondition:
        head = _head(node)
        if len(node.items) != 3:
            raise ParseError(f"({head} ...) takes exactly two operands", node.span)
        lhs, rhs = node.items[1], node.items[2]
        if not (self.mentions_fluent(lhs) or self.mentions_fluent(rhs)):
            raise ParseError(
                f"goal comparison {head!r} must mention a numeric fluent", node.span
            )
        if head in ("<=", "<"):
            lhs, rhs = rhs, lhs
            head = {"<=": ">=", "<": ">"}[head]
        left = self.expr(lhs)
        right = self.expr(rhs)
        if right == Const(0.0):
            expr = left
        else:
            expr = BinOp("-", left, right)
        comparator = {">=": Comparator.GE, ">": Comparator.GT, "=": Comparator.EQ}[head]
        return NumericCondition(expr, comparator)

    def goal_conditions(self, node) -> tuple[list[Literal], list[NumericCondition]]:
        literals: list[Literal] = []
        numeric: list[NumericCondition] = []

        def walk(cond):
            if not isinstance(cond, _SExpr) or not cond.items:
                span = cond.span if hasattr(cond, "span") else None
                raise ParseError("goal conditions must be parenthesised", span)
            head = _head(cond)
            if head == "and":
                for child in cond.items[1:]:
                    walk(child)
            elif head == "not":
                if len(cond.items) != 2 or not isinstance(cond.items[1], _SExpr):
                    raise ParseError("(not ...) takes one atom", cond.span)
                literals.append(
                    Literal(self.atom(cond.items[1], self.predicates, "predicate"), False)
                )
            elif head in _COMPARISON_OPS:
                numeric.append(self.comparison(cond))
            else:
                literals.append(Literal(self.atom(cond, self.predicates, "predicate"), True))

        walk(node)
        return literals, numeric


def parse_problem(text: str, domain: Domain, filename: str = "<problem>") -> Problem:
    """Parse a PDDL problem against ``domain``; symbols fully resolved."""
    tree = _parse_sexpr(_tokenize(text, filename), filename)
    _, sections = _expect_define(tree, "problem", filename)
    by_keyword: dict[str, _SExpr] = {}
    for section in sections:
        keyword = _head(section)
        if keyword in by_keyword:
            raise ParseError(f"duplicate section {keyword!r}", section.span)
        by_keyword[keyword] = section
    for keyword in by_keyword:
        if keyword not in (":domain", ":objects", ":init", ":goal"):
            raise ParseError(f"unsupported problem section {keyword!r}", by_keyword[keyword].span)

    reader = _ProblemReader(domain, filename)

    domain_section = by_keyword.get(":domain")
    if domain_section is not None:
        declared = domain_section.items[1]
        if not isinstance(declared, _Token) or declared.text != domain.name:
            raise DomainMismatch(
                f"problem declares domain {getattr(declared, 'text', '?')!r}, "
                f"expected {domain.name!r}"
            )

    objects_section = by_keyword.get(":objects")
    if objects_section is not None:
        for tok in _strip_types(objects_section.items[1:], objects_section.span):
            if tok.text not in reader.objects:
                reader.objects.append(tok.text)
    reader.object_set = set(reader.objects)

    propositions: set[GroundAtom] = set()
    fluents: dict[GroundAtom, float] = {}
    init_section = by_keyword.get(":init")
    if init_section is not None:
        for item in init_section.items[1:]:
            if not isinstance(item, _SExpr) or not item.items:
                raise ParseError("init entries must be parenthesised", init_section.span)
            if _head(item) == "=":
                if len(item.items) != 3 or not isinstance(item.items[1], _SExpr):
                    raise ParseError("(= (f args) value) expected", item.span)
                atom = reader.atom(item.items[1], reader.functions, "function")
                value_tok = item.items[2]
                if not isinstance(value_tok, _Token):
                    raise ParseError("fluent value must be a number", item.span)
                try:
                    value = float(value_tok.text)
                except ValueError:
                    raise ParseError(
                        f"fluent value {value_tok.text!r} is not a number", value_tok.span
                    ) from None
                if atom in fluents:
                    raise DuplicateSymbol(f"fluent {atom} assigned twice", item.span)
                fluents[atom] = value
            else:
                propositions.add(reader.atom(item, reader.predicates, "predicate"))

    literals: list[Literal] = []
    numeric: list[NumericCondition] = []
    goal_section = by_keyword.get(":goal")
    if goal_section is not None:
        if len(goal_section.items) != 2:
            raise ParseError("(:goal <condition>) expected", goal_section.span)
        literals, numeric = reader.goal_conditions(goal_section.items[1])

    return Problem(
        domain_name=domain.name,
        objects=tuple(reader.objects),
        propositional_goals=tuple(literals),
        numeric_goals=tuple(numeric),
        initial_state=State(frozenset(propositions), fluents),
    )


# --- PDDL writers (round-trip partners of the parsers) ---


def _atom_pddl(atom: GroundAtom) -> str:
    return "(" + " ".join((atom.symbol, *atom.args)) + ")"


def _expr_pddl(expr: Expr) -> str:
    if isinstance(expr, Const):
        return f"{expr.value:g}"
    if isinstance(expr, Var):
        return _atom_pddl(expr.atom)
    return f"({expr.op} {_expr_pddl(expr.left)} {_expr_pddl(expr.right)})"


def domain_to_pddl(domain: Domain) -> str:
    lines = [f"(define (domain {domain.name})"]
    requirements = [":strips"]
    if domain.functions:
        requirements.append(":numeric-fluents")
    lines.append(f"  (:requirements {' '.join(requirements)})")
    if domain.constant_objects:
        lines.append(f"  (:constants {' '.join(domain.constant_objects)})")
    decls = " ".join(
        "(" + " ".join((p.name, *(f"?x{i + 1}" for i in range(p.arity)))) + ")"
        for p in domain.predicates
    )
    lines.append(f"  (:predicates {decls})")
    if domain.functions:
        decls = " ".join(
            "(" + " ".join((f.name, *(f"?x{i + 1}" for i in range(f.arity)))) + ")"
            for f in domain.functions
        )
        lines.append(f"  (:functions {decls})")
    lines.append(")")
    return "\n".join(lines) + "\n"


def problem_to_pddl(problem: Problem, name: str = "task") -> str:
    lines = [f"(define (problem {name})", f"  (:domain {problem.domain_name})"]
    if problem.objects:
        lines.append(f"  (:objects {' '.join(problem.objects)})")
    init_entries = [_atom_pddl(a) for a in sorted(problem.initial_state.true_propositions)]
    init_entries += [
        f"(= {_atom_pddl(atom)} {value:g})"
        for atom, value in sorted(problem.initial_state.numeric_assignments.items())
    ]
    lines.append("  (:init " + " ".join(init_entries) + ")")
    goal_entries = [
        _atom_pddl(lit.atom) if lit.positive else f"(not {_atom_pddl(lit.atom)})"
        for lit in problem.propositional_goals
    ]
    comparator_text = {Comparator.GE: ">=", Comparator.GT: ">", Comparator.EQ: "="}
    goal_entries += [
        f"({comparator_text[c.comparator]} {_expr_pddl(c.expr)} 0)"
        for c in problem.numeric_goals
    ]
    lines.append("  (:goal (and " + " ".join(goal_entries) + "))")
    lines.append(")")
    return "\n".join(lines) + "\n"


# --- canonical JSON format ---


def expr_to_json(expr: Expr):
    if isinstance(expr, Const):
        return ["const", expr.value]
    if isinstance(expr, Var):
        return ["var", expr.atom.symbol, list(expr.atom.args)]
    return [expr.op, expr_to_json(expr.left), expr_to_json(expr.right)]


def expr_from_json(obj) -> Expr:
    if not isinstance(obj, list) or not obj:
        raise SchemaError(f"malformed expression node: {obj!r}")
    tag = obj[0]
    if tag == "const":
        if len(obj) != 2 or not isinstance(obj[1], (int, float)):
            raise SchemaError(f"malformed const node: {obj!r}")
        return Const(float(obj[1]))
    if tag == "var":
        if len(obj) != 3 or not isinstance(obj[1], str) or not isinstance(obj[2], list):
            raise SchemaError(f"malformed var node: {obj!r}")
        return Var(GroundAtom(obj[1], tuple(str(a) for a in obj[2])))
    if tag == "−":  # accept the unicode minus as a synonym
        tag = "-"
    if tag in _ARITHMETIC_OPS and len(obj) == 3:
        return BinOp(tag, expr_from_json(obj[1]), expr_from_json(obj[2]))
    raise SchemaError(f"unknown expression operator {obj[0]!r}")


def domain_to_json(domain: Domain) -> dict:
    return {
        "name": domain.name,
        "predicates": [[p.name, p.arity] for p in domain.predicates],
        "functions": [[f.name, f.arity] for f in domain.functions],
        "constants": list(domain.constant_objects),
    }


def domain_from_json(obj: dict) -> Domain:
    try:
        predicates = tuple(Symbol(str(n), int(a)) for n, a in obj["predicates"])
        functions = tuple(Symbol(str(n), int(a)) for n, a in obj["functions"])
        constants = tuple(str(c) for c in obj["constants"])
        return Domain(str(obj["name"]), predicates, functions, constants)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed domain object: {exc}") from exc


def _atom_from_json(symbol, args, arities: dict[str, int], kind: str) -> GroundAtom:
    if not isinstance(symbol, str) or not isinstance(args, list):
        raise SchemaError(f"malformed atom: {[symbol, args]!r}")
    if symbol not in arities:
        raise UnknownSymbol(f"{symbol!r} is not a declared {kind}")
    if len(args) != arities[symbol]:
        raise ArityMismatch(
            f"{symbol} expects {arities[symbol]} arguments, got {len(args)}"
        )
    return GroundAtom(symbol, tuple(str(a) for a in args))


def state_to_json(state: State) -> dict:
    return {
        "props": [[a.symbol, list(a.args)] for a in sorted(state.true_propositions)],
        "fluents": [
            [[a.symbol, list(a.args)], value]
            for a, value in sorted(state.numeric_assignments.items())
        ],
    }


def state_from_json(obj: dict, domain: Domain) -> State:
    predicates = {p.name: p.arity for p in domain.predicates}
    functions = {f.name: f.arity for f in domain.functions}
    if not isinstance(obj, dict) or "props" not in obj or "fluents" not in obj:
        raise SchemaError("state object needs 'props' and 'fluents'")
    props = set()
    for entry in obj["props"]:
        if not isinstance(entry, list) or len(entry) != 2:
            raise SchemaError(f"malformed proposition entry: {entry!r}")
        props.add(_atom_from_json(entry[0], entry[1], predicates, "predicate"))
    fluents = {}
    for entry in obj["fluents"]:
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not isinstance(entry[0], list)
            or len(entry[0]) != 2
            or not isinstance(entry[1], (int, float))
        ):
            raise SchemaError(f"malformed fluent entry: {entry!r}")
        atom = _atom_from_json(entry[0][0], entry[0][1], functions, "function")
        if atom in fluents:
            raise SchemaError(f"fluent {atom} assigned twice")
        fluents[atom] = float(entry[1])
    return State(frozenset(props), fluents)


_COMPARATOR_JSON = {c.value: c for c in Comparator}


def problem_to_json(problem: Problem) -> dict:
    return {
        "objects": list(problem.objects),
        "init": state_to_json(problem.initial_state),
        "goal": {
            "props": [
                [lit.positive, lit.atom.symbol, list(lit.atom.args)]
                for lit in problem.propositional_goals
            ],
            "numeric": [
                [c.comparator.value, expr_to_json(c.expr)]
                for c in problem.numeric_goals
            ],
        },
    }


def problem_from_json(obj: dict, domain: Domain) -> Problem:
    if not isinstance(obj, dict):
        raise SchemaError("problem must be an object")
    try:
        objects = tuple(str(o) for o in obj["objects"])
        init_obj = obj["init"]
        goal = obj["goal"]
        goal_props = goal["props"]
        goal_numeric = goal["numeric"]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed problem object: {exc}") from exc
    for const in domain.constant_objects:
        if const not in objects:
            raise SchemaError(f"constant object {const!r} missing from objects")
    predicates = {p.name: p.arity for p in domain.predicates}
    state = state_from_json(init_obj, domain)
    literals = []
    for entry in goal_props:
        if not isinstance(entry, list) or len(entry) != 3 or not isinstance(entry[0], bool):
            raise SchemaError(f"malformed goal literal: {entry!r}")
        literals.append(
            Literal(_atom_from_json(entry[1], entry[2], predicates, "predicate"), entry[0])
        )
    numeric = []
    for entry in goal_numeric:
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or entry[0] not in _COMPARATOR_JSON
        ):
            raise SchemaError(f"malformed numeric goal: {entry!r}")
        expr = expr_from_json(entry[1])
        if not expr_variables(expr):
            raise SchemaError("numeric goal mentions no fluent")
        numeric.append(NumericCondition(expr, _COMPARATOR_JSON[entry[0]]))
    return Problem(
        domain_name=domain.name,
        objects=objects,
        propositional_goals=tuple(literals),
        numeric_goals=tuple(numeric),
        initial_state=state,
    )


def task_to_json(domain: Domain, problem: Problem) -> dict:
    return {"domain": domain_to_json(domain), "problem": problem_to_json(problem)}


def parse_json_task(text: str) -> tuple[Domain, Problem]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "domain" not in obj or "problem" not in obj:
        raise SchemaError("task object needs 'domain' and 'problem'")
    domain = domain_from_json(obj["domain"])
    return domain, problem_from_json(obj["problem"], domain)


def dataset_to_json(dataset: Dataset) -> dict:
    entries = []
    for entry in dataset.entries:
        obj = {
            "problem": problem_to_json(entry.problem),
            "states": [state_to_json(s) for s in entry.states],
        }
        if entry.labels is not None:
            obj["labels"] = list(entry.labels)
        entries.append(obj)
    return {"domain": domain_to_json(dataset.domain), "entries": entries}


def parse_json_dataset(text: str) -> Dataset:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "domain" not in obj or "entries" not in obj:
        raise SchemaError("dataset object needs 'domain' and 'entries'")
    domain = domain_from_json(obj["domain"])
    entries = []
    for i, entry_obj in enumerate(obj["entries"]):
        if not isinstance(entry_obj, dict) or "problem" not in entry_obj or "states" not in entry_obj:
            raise SchemaError(f"entry {i} needs 'problem' and 'states'")
        problem = problem_from_json(entry_obj["problem"], domain)
        states = [state_from_json(s, domain) for s in entry_obj["states"]]
        declared = set(problem.objects)
        for state in states:
            atoms = list(state.true_propositions) + list(state.numeric_assignments)
            for atom in atoms:
                for arg in atom.args:
                    if arg not in declared:
                        raise UnknownSymbol(
                            f"entry {i}: object {arg!r} in {atom} is not declared"
                        )
        labels = entry_obj.get("labels")
        if labels is not None:
            if not isinstance(labels, list) or not all(
                isinstance(x, (int, float)) for x in labels
            ):
                raise SchemaError(f"entry {i} labels must be numbers")
            labels = [float(x) for x in labels]
        entries.append(DatasetEntry(problem, states, labels))
    return Dataset(domain, entries)
