/** JSON shapes of the core's external interfaces. */

export type SymbolDecl = [name: string, arity: number];

export interface DomainJson {
  name: string;
  predicates: SymbolDecl[];
  functions: SymbolDecl[];
  constants: string[];
}

export type AtomJson = [symbol: string, args: string[]];
export type FluentJson = [atom: AtomJson, value: number];

export interface StateJson {
  props: AtomJson[];
  fluents: FluentJson[];
}

/** Prefix expression: ["const", c] | ["var", name, args] | [op, lhs, rhs]. */
export type ExprJson =
  | ["const", number]
  | ["var", string, string[]]
  | [string, ExprJson, ExprJson];

export type Comparator = "ge" | "gt" | "eq";
export type GoalLiteralJson = [positive: boolean, symbol: string, args: string[]];
export type NumericGoalJson = [Comparator, ExprJson];

export interface ProblemJson {
  objects: string[];
  init: StateJson;
  goal: { props: GoalLiteralJson[]; numeric: NumericGoalJson[] };
}

export interface TaskJson {
  domain: DomainJson;
  problem: ProblemJson;
}

export interface DatasetEntryJson {
  problem: ProblemJson;
  states: StateJson[];
  labels?: number[];
}

export interface DatasetJson {
  domain: DomainJson;
  entries: DatasetEntryJson[];
}

export interface GraphJson {
  node_count: number;
  categorical: number[];
  continuous: number[];
  edges: [number, number, number][];
}

export type KernelKind = "wl" | "2wl" | "2lwl" | "iwl" | "ccwl";
export type Aggregator = "sum" | "mean" | "max";

export interface ModelJson {
  schema_version: number;
  domain: DomainJson;
  kernel: KernelKind;
  iterations: number;
  aggregator: Aggregator | null;
  colour_table: string[][];
  registry: [unknown[], number][];
  collected: number[];
  weights: number[] | null;
  bias: number | null;
}
