import { describe, expect, it } from "vitest";

import { canonicalJson, exportReportText, exportSpecDoc, exportSpecText } from "../src/export.js";
import { loadFixtureText, loadReport } from "./helpers.js";

describe("canonicalJson", () => {
  it("sorts keys at every depth", () => {
    const text = canonicalJson({ b: { d: 1, c: 2 }, a: [{ z: 0, y: 1 }] });
    expect(text.indexOf('"a"')).toBeLessThan(text.indexOf('"b"'));
    expect(text.indexOf('"c"')).toBeLessThan(text.indexOf('"d"'));
    expect(text.indexOf('"y"')).toBeLessThan(text.indexOf('"z"'));
  });
});

describe("export files", () => {
  it("spec bytes are identical to the engine's canonical serialization", () => {
    // the engine-side writer produced the expected file; byte equality
    // means the exported spec replays through the CLI unchanged
    const report = loadReport("report_fixture.json");
    expect(exportSpecText(report)).toBe(loadFixtureText("export_expected.spec.json"));
  });

  it("report bytes are identical to the engine's canonical serialization", () => {
    const report = loadReport("report_fixture.json");
    expect(exportReportText(report)).toBe(
      loadFixtureText("export_expected.report.json"),
    );
  });

  it("exported spec carries the baseline the server actually used", () => {
    const report = loadReport("report_fixture.json");
    const doc = exportSpecDoc(report) as {
      baseline: { series: Record<string, number> };
      intensity: { f_c: number; f_p: number };
      totals: Record<string, number>;
    };
    expect(doc.baseline.series).toEqual(report.baseline_input);
    expect(doc.totals).toEqual(report.totals);
    expect(doc.intensity.f_c).toBe(report.intensity.f_c);
    expect(doc.intensity.f_p).toBe(report.intensity.f_p);
  });
});
