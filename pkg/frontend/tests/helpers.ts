import { readFileSync } from "node:fs";

import type { ReportDoc, ScorecardDoc } from "../src/types.js";

export function loadFixture<T>(name: string): T {
  const url = new URL(`./fixtures/${name}`, import.meta.url);
  return JSON.parse(readFileSync(url, "utf-8")) as T;
}

export function loadFixtureText(name: string): string {
  const url = new URL(`./fixtures/${name}`, import.meta.url);
  return readFileSync(url, "utf-8");
}

export interface FactorSweepFixture {
  cards: Record<string, ScorecardDoc>;
  base_factors: Record<string, number>;
  sweep: Array<{
    card: string;
    index_id: string;
    score: number;
    server_factor: number;
  }>;
}

export function loadReport(name: string): ReportDoc {
  return loadFixture<ReportDoc>(name);
}
