/** Typed fetch wrappers for the engine's HTTP endpoints. */

import type {
  CatalogDoc,
  FactorKind,
  FactorResponse,
  ReportDoc,
  ScorecardDoc,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

async function readJson(response: Response): Promise<unknown> {
  const text = await response.text();
  let body: unknown = null;
  try {
    body = text === "" ? null : JSON.parse(text);
  } catch {
    // non-JSON error body; fall through with the raw text
  }
  if (!response.ok) {
    const detail =
      body !== null && typeof body === "object" && "error" in body
        ? String((body as { error: unknown }).error)
        : text || response.statusText;
    throw new ApiError(response.status, detail);
  }
  return body;
}

export async function fetchCatalog(): Promise<CatalogDoc> {
  return (await readJson(await fetch("/api/models"))) as CatalogDoc;
}

export async function fetchScorecard(
  region: string,
  kind: FactorKind,
): Promise<{ scorecard: ScorecardDoc; factor: number }> {
  const body = (await readJson(
    await fetch(`/api/scorecards/${region}/${kind}`),
  )) as { scorecard: ScorecardDoc; factor: number };
  return body;
}

export async function postFactor(card: ScorecardDoc): Promise<FactorResponse> {
  const response = await fetch("/api/factor", {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(card),
  });
  return (await readJson(response)) as FactorResponse;
}

export interface ScenarioRequest {
  spec_id: string;
  intensity?: { f_c: number; f_p: number };
  target?: number;
}

export async function postScenario(request: ScenarioRequest): Promise<ReportDoc> {
  const response = await fetch("/api/scenario", {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(request),
  });
  const body = (await readJson(response)) as { report: ReportDoc };
  return body.report;
}
