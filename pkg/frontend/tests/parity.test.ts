import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, describe, expect, it } from "vitest";

import {
  CCWLFeatures,
  ILGGenerator,
  WLFeatures,
  load_model,
  runCli,
} from "../src/index.js";
import { parseEmbeddingCsv, withScratchDir, writeJson } from "../src/core.js";
import type { DatasetJson, TaskJson } from "../src/types.js";

const here = new URL(".", import.meta.url).pathname;
const toyDataset = JSON.parse(
  readFileSync(join(here, "fixtures", "toy_blocksworld.json"), "utf-8"),
) as DatasetJson;
const ccTask = JSON.parse(
  readFileSync(join(here, "fixtures", "ccblocks_task.json"), "utf-8"),
) as TaskJson;

const scratch = mkdtempSync(join(tmpdir(), "wlkit-parity-"));
afterAll(() => rmSync(scratch, { recursive: true, force: true }));

describe("generator wrapper", () => {
  it("runs the set_problem / to_graph sequence on the worked example", () => {
    const generator = new ILGGenerator(ccTask.domain);
    generator.set_problem(ccTask.problem);
    const graph = generator.to_graph(ccTask.problem.init);
    expect(graph.node_count).toBe(12);
    expect(graph.edges.length).toBe(12);
    expect(graph.categorical.length).toBe(12);
    expect(graph.continuous.filter((x) => x === 3)).toHaveLength(2);
    // default state is the problem's initial state
    const viaDefault = generator.to_graph();
    expect(viaDefault).toEqual(graph);
  });

  it("requires set_problem before to_graph", () => {
    expect(() => new ILGGenerator(ccTask.domain).to_graph()).toThrow(/set_problem/);
  });
});

describe("feature model wrapper", () => {
  it("embeds the toy dataset exactly like the CLI CSV output", () => {
    const model = new WLFeatures(toyDataset.domain, { iterations: 2 });
    model.collect(toyDataset);
    const viaBindings = model.embed(toyDataset);

    const modelPath = join(scratch, "parity-model.json");
    model.save(modelPath);
    const csv = withScratchDir((dir) => {
      const dataPath = writeJson(dir, "dataset.json", toyDataset);
      return runCli(["embed", "--model", modelPath, "--dataset", dataPath]);
    });
    const viaCli = parseEmbeddingCsv(csv);

    expect(viaBindings.length).toBe(13);
    expect(viaBindings).toEqual(viaCli);
    expect(viaBindings[0].length).toBe(model.feature_names_count());
  });

  it("saves models the CLI can load and inspect", () => {
    const model = new WLFeatures(toyDataset.domain, { iterations: 2 });
    model.collect(toyDataset);
    model.set_weights(new Array(model.feature_names_count()).fill(0.5), 1.25);
    const path = join(scratch, "weighted-model.json");
    model.save(path);

    const inspect = runCli(["inspect", "--model", path]);
    expect(inspect).toMatch(/kernel wl/);
    expect(inspect).toMatch(/iterations 2/);
    expect(inspect).toMatch(/weights present/);
  });

  it("round-trips through load_model with identical embeddings", () => {
    const model = new CCWLFeatures(toyDataset.domain, { iterations: 1 });
    model.collect(toyDataset);
    const path = join(scratch, "ccwl-model.json");
    model.save(path);

    const loaded = load_model(path);
    expect(loaded).toBeInstanceOf(CCWLFeatures);
    expect(loaded.embed(toyDataset)).toEqual(model.embed(toyDataset));
    // the continuous kernel appends a second feature block
    expect(model.embed(toyDataset)[0].length).toBe(2 * model.feature_names_count());
  });

  it("surfaces core error names", () => {
    const model = new WLFeatures(toyDataset.domain);
    expect(() => model.embed(toyDataset)).toThrow(/ModelNotCollected/);

    const otherDomain = { ...toyDataset.domain, name: "other" };
    const mismatched = new WLFeatures(otherDomain);
    expect(() => mismatched.collect(toyDataset)).toThrow(/DomainMismatch/);

    const model2 = new WLFeatures(toyDataset.domain);
    model2.collect(toyDataset);
    expect(() => model2.set_weights([1, 2, 3])).toThrow(/DimensionMismatch/);
  });

  it("distinguishes the labelled toy dataset completely", () => {
    const model = new WLFeatures(toyDataset.domain, { iterations: 2 });
    model.collect(toyDataset);
    const path = join(scratch, "distinguish-model.json");
    model.save(path);
    const out = withScratchDir((dir) => {
      const dataPath = writeJson(dir, "dataset.json", toyDataset);
      return runCli(["distinguish", "--model", path, "--dataset", dataPath]);
    });
    expect(out).toContain("pairs_total 78");
    expect(out).toContain("pairs_indistinguishable 0");
  });
});
