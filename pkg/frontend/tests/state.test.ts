import { describe, expect, it } from "vitest";

import {
  applyReport,
  canExport,
  editScore,
  initialState,
  loadCards,
  selectSpec,
  setTarget,
} from "../src/state.js";
import { loadFixture, loadReport, type FactorSweepFixture } from "./helpers.js";

const fixture = loadFixture<FactorSweepFixture>("factor_sweep.json");

function loadedState() {
  return loadCards(
    selectSpec(initialState(), "fixture"),
    "singapore",
    structuredClone(fixture.cards["singapore-ceiling"]),
    structuredClone(fixture.cards["singapore-speed"]),
  );
}

describe("editScore", () => {
  it("updates the entry and sets the dirty flag", () => {
    const clean = applyReport(loadedState(), loadReport("report_fixture.json"));
    expect(clean.dirty).toBe(false);
    const edited = editScore(clean, "ceiling", "long_term_mixture_ambition", 50);
    expect(edited.cards.ceiling!.entries["long_term_mixture_ambition"]).toBe(50);
    expect(edited.dirty).toBe(true);
    // original state untouched
    expect(clean.cards.ceiling!.entries["long_term_mixture_ambition"]).toBe(25);
  });

  it("treats a no-op edit as no change", () => {
    const clean = applyReport(loadedState(), loadReport("report_fixture.json"));
    const same = editScore(clean, "ceiling", "long_term_mixture_ambition", 25);
    expect(same).toBe(clean);
    expect(same.dirty).toBe(false);
  });

  it("blocks illegal five-level scores", () => {
    const state = loadedState();
    expect(() =>
      editScore(state, "ceiling", "long_term_mixture_ambition", 60),
    ).toThrow(/not legal/);
  });

  it("accepts continuous scores anywhere in range", () => {
    const state = loadedState();
    const edited = editScore(state, "speed", "smart_grid_index", 71.5);
    expect(edited.cards.speed!.entries["smart_grid_index"]).toBe(71.5);
  });

  it("rejects edits against unknown indices", () => {
    expect(() => editScore(loadedState(), "speed", "warp_drive", 50)).toThrow(
      /no index/,
    );
  });
});

describe("target and export gating", () => {
  it("rejects nonpositive targets", () => {
    expect(() => setTarget(loadedState(), -5)).toThrow(/positive/);
    expect(() => setTarget(loadedState(), Number.NaN)).toThrow(/positive/);
  });

  it("export is enabled only after a clean recompute", () => {
    let state = loadedState();
    expect(canExport(state)).toBe(false);
    state = applyReport(state, loadReport("report_fixture.json"));
    expect(canExport(state)).toBe(true);
    state = editScore(state, "ceiling", "grid_connection_permission", 0);
    expect(canExport(state)).toBe(false);
  });

  it("changing the spec invalidates the last report", () => {
    let state = applyReport(loadedState(), loadReport("report_fixture.json"));
    state = selectSpec(state, "another");
    expect(state.lastReport).toBeNull();
    expect(state.dirty).toBe(true);
  });
});
