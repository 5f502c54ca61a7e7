/**
 * Thin wrapper classes that drive the core through its CLI and file formats.
 *
 * No feature-generation logic lives here: inputs are marshalled to the
 * canonical JSON structures, the core produces graphs/models/embeddings, and
 * errors surface with the core's error names in the message.
 */

import { readFileSync, writeFileSync } from "node:fs";

import { parseEmbeddingCsv, runCli, withScratchDir, writeJson } from "./core.js";
import type {
  Aggregator,
  DatasetJson,
  DomainJson,
  GraphJson,
  KernelKind,
  ModelJson,
  ProblemJson,
  StateJson,
} from "./types.js";

export * from "./types.js";
export { runCli } from "./core.js";

/** Builds instance learning graphs for the states of one problem at a time. */
export class ILGGenerator {
  private problem: ProblemJson | null = null;

  constructor(readonly domain: DomainJson) {}

  set_problem(problem: ProblemJson): void {
    this.problem = problem;
  }

  to_graph(state?: StateJson): GraphJson {
    if (this.problem === null) {
      throw new Error("set_problem must be called before to_graph");
    }
    const task = { domain: this.domain, problem: this.problem };
    return withScratchDir((dir) => {
      const taskPath = writeJson(dir, "task.json", task);
      const args = [
        "graphify",
        "--domain",
        taskPath,
        "--problem",
        taskPath,
        "--format",
        "json",
      ];
      if (state !== undefined) {
        args.push("--state", writeJson(dir, "state.json", state));
      }
      return JSON.parse(runCli(args)) as GraphJson;
    });
  }
}

export interface FeatureOptions {
  iterations?: number;
  aggregator?: Aggregator;
}

/** Base wrapper around a collected feature model; subclasses pick the kernel. */
export class WLFeatures {
  readonly kernel: KernelKind = "wl";
  readonly iterations: number;
  readonly aggregator: Aggregator | undefined;
  protected model: ModelJson | null = null;

  constructor(readonly domain: DomainJson, options: FeatureOptions = {}) {
    this.iterations = options.iterations ?? 2;
    this.aggregator = options.aggregator;
  }

  /** Collect the colour vocabulary of a dataset (kernel in collect mode). */
  collect(dataset: DatasetJson): void {
    if (JSON.stringify(dataset.domain) !== JSON.stringify(this.domain)) {
      throw new Error("DomainMismatch: dataset domain differs from the model's");
    }
    this.model = withScratchDir((dir) => {
      const dataPath = writeJson(dir, "dataset.json", dataset);
      const modelPath = `${dir}/model.json`;
      const args = [
        "collect",
        "--dataset",
        dataPath,
        "--kernel",
        this.kernel,
        "--iterations",
        String(this.iterations),
        "--out",
        modelPath,
      ];
      if (this.aggregator !== undefined) {
        args.push("--aggregator", this.aggregator);
      }
      runCli(args);
      return JSON.parse(readFileSync(modelPath, "utf-8")) as ModelJson;
    });
  }

  /** One embedding row per state, in dataset serial order. */
  embed(dataset: DatasetJson): number[][] {
    const model = this.requireModel();
    return withScratchDir((dir) => {
      const modelPath = writeJson(dir, "model.json", model);
      const dataPath = writeJson(dir, "dataset.json", dataset);
      const csv = runCli(["embed", "--model", modelPath, "--dataset", dataPath]);
      return parseEmbeddingCsv(csv);
    });
  }

  set_weights(weights: number[], bias = 0): void {
    const model = this.requireModel();
    const expected =
      model.collected.length * (model.kernel === "ccwl" ? 2 : 1);
    if (weights.length !== expected) {
      throw new Error(
        `DimensionMismatch: expected ${expected} weights, got ${weights.length}`,
      );
    }
    model.weights = [...weights];
    model.bias = bias;
  }

  save(path: string): void {
    const model = this.requireModel();
    writeFileSync(path, JSON.stringify(model, null, 2) + "\n", "utf-8");
  }

  /** The collected colour count |C|. */
  feature_names_count(): number {
    return this.requireModel().collected.length;
  }

  protected requireModel(): ModelJson {
    if (this.model === null) {
      throw new Error("ModelNotCollected: collect() must run first");
    }
    return this.model;
  }

  /** Internal: adopt an already-loaded model object. */
  static _wrap(model: ModelJson): WLFeatures {
    const ctor = KERNEL_CLASSES[model.kernel];
    const instance = new ctor(model.domain, {
      iterations: model.iterations,
      aggregator: model.aggregator ?? undefined,
    });
    instance.model = model;
    return instance;
  }
}

export class TwoWLFeatures extends WLFeatures {
  override readonly kernel: KernelKind = "2wl";
}

export class TwoLWLFeatures extends WLFeatures {
  override readonly kernel: KernelKind = "2lwl";
}

export class IWLFeatures extends WLFeatures {
  override readonly kernel: KernelKind = "iwl";
}

export class CCWLFeatures extends WLFeatures {
  override readonly kernel: KernelKind = "ccwl";
}

const KERNEL_CLASSES: Record<KernelKind, new (d: DomainJson, o?: FeatureOptions) => WLFeatures> = {
  wl: WLFeatures,
  "2wl": TwoWLFeatures,
  "2lwl": TwoLWLFeatures,
  iwl: IWLFeatures,
  ccwl: CCWLFeatures,
};

/** Load a model file saved by either the core CLI or these bindings. */
export function load_model(path: string): WLFeatures {
  const model = JSON.parse(readFileSync(path, "utf-8")) as ModelJson;
  if (typeof model !== "object" || model === null || !(model.kernel in KERNEL_CLASSES)) {
    throw new Error(`SchemaVersionMismatch: not a readable model file: ${path}`);
  }
  return WLFeatures._wrap(model);
}
