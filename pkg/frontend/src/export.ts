/**
 * Downloadable files byte-compatible with the CLI formats.
 *
 * The engine writes JSON with sorted keys and two-space indentation;
 * serializing the same document here must produce the same bytes so an
 * exported spec replays through `entrans scenario` into the identical
 * report. Integral floats are the one cross-language hazard (Python keeps
 * a trailing `.0`); report documents never round values, so the shipped
 * fixtures pin the compatibility.
 */

import type { ReportDoc } from "./types.js";

type Json = null | boolean | number | string | Json[] | { [key: string]: Json };

function sortKeysDeep(value: Json): Json {
  if (Array.isArray(value)) {
    return value.map(sortKeysDeep);
  }
  if (value !== null && typeof value === "object") {
    const sorted: { [key: string]: Json } = {};
    for (const key of Object.keys(value).sort()) {
      sorted[key] = sortKeysDeep(value[key]);
    }
    return sorted;
  }
  return value;
}

/** Sorted-key, 2-space-indented JSON, matching the engine's writers. */
export function canonicalJson(value: unknown): string {
  return JSON.stringify(sortKeysDeep(value as Json), null, 2);
}

/**
 * Rebuild a CLI-loadable scenario spec from a composed report: the
 * baseline the server used is carried verbatim as an explicit series, so
 * the replay needs no model or panel files.
 */
export function exportSpecDoc(report: ReportDoc): Record<string, unknown> {
  const bounds: Record<string, number> = {
    c_base: report.bounds.c_base,
    c_op: report.bounds.c_op,
    p_base: report.bounds.p_base,
    p_op: report.bounds.p_op,
  };
  return {
    format: "entrans-scenario",
    version: 1,
    region: report.region,
    target_kind: report.target_kind,
    policy_start: report.policy_start,
    horizon: report.horizon,
    bounds,
    intensity: { f_c: report.intensity.f_c, f_p: report.intensity.f_p },
    totals: report.totals,
    baseline: { series: report.baseline_input },
  };
}

export function exportSpecText(report: ReportDoc): string {
  return canonicalJson(exportSpecDoc(report));
}

export function exportReportText(report: ReportDoc): string {
  return canonicalJson(report);
}

/** Trigger a browser download (DOM side effect; untested). */
export function download(filename: string, text: string): void {
  const blob = new Blob([text], { type: "application/json" });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = filename;
  anchor.click();
  URL.revokeObjectURL(url);
}
