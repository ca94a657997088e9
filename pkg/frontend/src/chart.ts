/**
 * Pure chart geometry: report in, SVG polyline data out. Rendering is a
 * thin wrapper so the data path (including the baseline <= policy <=
 * optimal ordering) is testable without a DOM.
 */

import type { ReportDoc, ScenarioName } from "./types.js";

export const SCENARIOS: ScenarioName[] = ["baseline", "policy", "optimal"];

export interface SeriesData {
  name: ScenarioName;
  years: number[];
  values: number[];
  shares: number[];
}

export interface ChartLayout {
  width: number;
  height: number;
  pad: number;
  series: Array<{ name: ScenarioName; points: string }>;
  horizonX: number;
  targetY: number | null;
  maxValue: number;
}

export function chartData(report: ReportDoc): SeriesData[] {
  return SCENARIOS.map((name) => ({
    name,
    years: [...report.years],
    values: [...report.series[name]],
    shares: [...report.shares[name]],
  }));
}

/** True when the three curves keep their expected pointwise order. */
export function orderingHolds(data: SeriesData[], tol = 1e-12): boolean {
  const byName = new Map(data.map((series) => [series.name, series]));
  const baseline = byName.get("baseline");
  const policy = byName.get("policy");
  const optimal = byName.get("optimal");
  if (!baseline || !policy || !optimal) {
    return false;
  }
  return baseline.shares.every(
    (share, i) =>
      share <= policy.shares[i] + tol && policy.shares[i] <= optimal.shares[i] + tol,
  );
}

export function buildChart(
  report: ReportDoc,
  width = 640,
  height = 320,
  pad = 40,
): ChartLayout {
  const data = chartData(report);
  const years = report.years;
  const span = Math.max(years[years.length - 1] - years[0], 1);
  let maxValue = Math.max(...data.flatMap((series) => series.values));
  if (report.gap !== null) {
    maxValue = Math.max(maxValue, report.gap.target_value);
  }
  const x = (year: number) => pad + ((year - years[0]) / span) * (width - 2 * pad);
  const y = (value: number) => height - pad - (value / maxValue) * (height - 2 * pad);
  return {
    width,
    height,
    pad,
    series: data.map((series) => ({
      name: series.name,
      points: series.years
        .map((year, i) => `${x(year).toFixed(2)},${y(series.values[i]).toFixed(2)}`)
        .join(" "),
    })),
    horizonX: x(report.horizon),
    targetY: report.gap === null ? null : y(report.gap.target_value),
    maxValue,
  };
}
