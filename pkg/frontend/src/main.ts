/** DOM wiring for the scenario explorer. All computation lives in the
 * pure modules (factor, state, chart, export); this file only renders
 * state and forwards events. */

import { ApiError, fetchCatalog, fetchScorecard, postFactor, postScenario } from "./api.js";
import { buildChart, orderingHolds, chartData } from "./chart.js";
import { canExport, editScore, initialState, loadCards, selectSpec, setTarget, applyReport } from "./state.js";
import type { ExplorerState } from "./state.js";
import { legalScores, previewFactor } from "./factor.js";
import { download, exportReportText, exportSpecText } from "./export.js";
import type { FactorKind, ReportDoc, ScorecardDoc } from "./types.js";

const PREVIEW_DEBOUNCE_MS = 150;
const PREVIEW_SERVER_TOLERANCE = 1e-6;

let state: ExplorerState = initialState();
let recomputeGeneration = 0;
let previewTimer: ReturnType<typeof setTimeout> | null = null;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function setState(next: ExplorerState): void {
  state = next;
  schedulePreview();
  renderControls();
}

function schedulePreview(): void {
  if (previewTimer !== null) {
    clearTimeout(previewTimer);
  }
  previewTimer = setTimeout(renderPreview, PREVIEW_DEBOUNCE_MS);
}

function renderPreview(): void {
  const { ceiling, speed } = state.cards;
  el("preview-fc").textContent = ceiling ? previewFactor(ceiling).toFixed(3) : "-";
  el("preview-fp").textContent = speed ? previewFactor(speed).toFixed(3) : "-";
  el("dirty-flag").hidden = !state.dirty;
}

function renderControls(): void {
  (el("recompute") as HTMLButtonElement).disabled = state.specId === null || state.region === null;
  const exportable = canExport(state);
  (el("export-spec") as HTMLButtonElement).disabled = !exportable;
  (el("export-report") as HTMLButtonElement).disabled = !exportable;
}

function showError(message: string, blocking = false): void {
  const box = el("error-box");
  box.hidden = false;
  box.className = blocking ? "error blocking" : "error";
  el("error-message").textContent = message;
}

function clearError(): void {
  el("error-box").hidden = true;
}

function scoreControl(kind: FactorKind, card: ScorecardDoc, indexId: string): HTMLElement {
  const index = card.indices.find((item) => item.id === indexId)!;
  const wrapper = document.createElement("label");
  wrapper.className = "score-row";
  const caption = document.createElement("span");
  caption.textContent = `${index.id} (w=${index.weight})`;
  caption.title = index.description;
  wrapper.appendChild(caption);
  const grid = legalScores(index);
  if (grid !== null) {
    const select = document.createElement("select");
    for (const value of grid) {
      const option = document.createElement("option");
      option.value = String(value);
      option.textContent = String(value);
      option.selected = card.entries[indexId] === value;
      select.appendChild(option);
    }
    select.addEventListener("change", () => {
      setState(editScore(state, kind, indexId, Number(select.value)));
    });
    wrapper.appendChild(select);
  } else {
    const input = document.createElement("input");
    input.type = "number";
    input.min = "0";
    input.max = "100";
    input.step = "0.01";
    input.value = String(card.entries[indexId]);
    input.addEventListener("change", () => {
      const score = Number(input.value);
      if (!Number.isFinite(score) || score < 0 || score > 100) {
        input.value = String(state.cards[kind]!.entries[indexId]);
        showError(`score for ${indexId} must lie in [0, 100]`);
        return;
      }
      clearError();
      setState(editScore(state, kind, indexId, score));
    });
    wrapper.appendChild(input);
  }
  return wrapper;
}

function renderCards(): void {
  for (const kind of ["ceiling", "speed"] as const) {
    const host = el(`card-${kind}`);
    host.textContent = "";
    const card = state.cards[kind];
    if (card === null) {
      return;
    }
    let group = "";
    for (const index of card.indices) {
      if (index.group !== group) {
        group = index.group;
        const heading = document.createElement("h4");
        heading.textContent = group;
        host.appendChild(heading);
      }
      host.appendChild(scoreControl(kind, card, index.id));
    }
  }
}

function renderGap(report: ReportDoc): void {
  const badge = el("gap-badge");
  if (report.gap === null) {
    badge.hidden = true;
    return;
  }
  badge.hidden = false;
  const gap = report.gap;
  el("gap-shortfall").textContent = gap.shortfall.toFixed(2);
  const fp = gap.required_f_p;
  el("gap-fp").textContent = `${fp.value.toFixed(3)}${fp.in_envelope ? "" : " (out of envelope)"}`;
  const fcRow = el("gap-fc-row");
  if (gap.required_f_c !== null) {
    fcRow.hidden = false;
    const fc = gap.required_f_c;
    el("gap-fc").textContent = `${fc.value.toFixed(3)}${fc.in_envelope ? "" : " (out of envelope)"}`;
  } else {
    fcRow.hidden = true;
  }
  badge.classList.toggle(
    "warning",
    !fp.in_envelope || (gap.required_f_c !== null && !gap.required_f_c.in_envelope),
  );
}

function renderChart(report: ReportDoc): void {
  const layout = buildChart(report);
  const svg = el("chart");
  const colors: Record<string, string> = {
    baseline: "#5b8db8",
    policy: "#2d2d2d",
    optimal: "#4a9a5b",
  };
  const lines = layout.series
    .map(
      (series) =>
        `<polyline fill="none" stroke="${colors[series.name]}" stroke-width="2" points="${series.points}"/>`,
    )
    .join("");
  const horizon = `<line x1="${layout.horizonX}" y1="${layout.pad}" x2="${layout.horizonX}" y2="${layout.height - layout.pad}" stroke="#999" stroke-dasharray="4 3"/>`;
  const target =
    layout.targetY === null
      ? ""
      : `<line x1="${layout.pad}" y1="${layout.targetY}" x2="${layout.width - layout.pad}" y2="${layout.targetY}" stroke="#c0392b" stroke-dasharray="6 3"/>`;
  svg.innerHTML = lines + horizon + target;
  if (!orderingHolds(chartData(report))) {
    showError("scenario ordering violated in the rendered data; check server state");
  }
}

async function loadRegion(region: string): Promise<void> {
  clearError();
  try {
    const [ceiling, speed] = await Promise.all([
      fetchScorecard(region, "ceiling"),
      fetchScorecard(region, "speed"),
    ]);
    setState(loadCards(state, region, ceiling.scorecard, speed.scorecard));
    renderCards();
  } catch (error) {
    showError(`failed to load scorecards: ${String(error)}`);
  }
}

async function recompute(): Promise<void> {
  const { ceiling, speed } = state.cards;
  if (state.specId === null || ceiling === null || speed === null) {
    return;
  }
  const generation = ++recomputeGeneration;
  clearError();
  el("recompute-status").textContent = "computing...";
  try {
    const [fcResponse, fpResponse] = await Promise.all([
      postFactor(ceiling),
      postFactor(speed),
    ]);
    if (generation !== recomputeGeneration) {
      return; // superseded by a newer request
    }
    const violations = [...fcResponse.violations, ...fpResponse.violations];
    if (fcResponse.factor === null || fpResponse.factor === null) {
      showError(`server rejected the scorecard: ${violations.join("; ")}`);
      return;
    }
    for (const [label, server, card] of [
      ["f_c", fcResponse.factor, ceiling],
      ["f_p", fpResponse.factor, speed],
    ] as const) {
      if (Math.abs(server - previewFactor(card)) > PREVIEW_SERVER_TOLERANCE) {
        showError(`preview ${label} drifted from the server value; reload the page`);
        return;
      }
    }
    const report = await postScenario({
      spec_id: state.specId,
      intensity: { f_c: fcResponse.factor, f_p: fpResponse.factor },
      ...(state.target !== null ? { target: state.target } : {}),
    });
    if (generation !== recomputeGeneration) {
      return;
    }
    setState(applyReport(state, report));
    renderChart(report);
    renderGap(report);
    el("recompute-status").textContent =
      `f_c=${report.intensity.f_c.toFixed(3)} f_p=${report.intensity.f_p.toFixed(3)}`;
  } catch (error) {
    if (generation !== recomputeGeneration) {
      return;
    }
    if (error instanceof ApiError && error.status === 422) {
      showError(`scenario infeasible: ${error.message}`, true);
    } else {
      showError(`recompute failed: ${String(error)} (retry when ready)`);
    }
    el("recompute-status").textContent = "";
  }
}

async function boot(): Promise<void> {
  try {
    const catalog = await fetchCatalog();
    const specSelect = el<HTMLSelectElement>("spec-select");
    for (const spec of catalog.specs) {
      const option = document.createElement("option");
      option.value = spec.id;
      option.textContent = `${spec.id} (${spec.target_kind} ${spec.policy_start}-${spec.horizon})`;
      specSelect.appendChild(option);
    }
    if (catalog.specs.length > 0) {
      setState(selectSpec(state, catalog.specs[0].id));
    }
    specSelect.addEventListener("change", () => {
      setState(selectSpec(state, specSelect.value));
    });
    const regionSelect = el<HTMLSelectElement>("region-select");
    regionSelect.addEventListener("change", () => {
      void loadRegion(regionSelect.value);
    });
    await loadRegion(regionSelect.value);
  } catch (error) {
    showError(`failed to reach the API: ${String(error)}`);
  }

  el<HTMLInputElement>("target-input").addEventListener("change", (event) => {
    const raw = (event.target as HTMLInputElement).value.trim();
    try {
      setState(setTarget(state, raw === "" ? null : Number(raw)));
      clearError();
    } catch (error) {
      showError(String(error));
    }
  });
  el("recompute").addEventListener("click", () => void recompute());
  el("export-spec").addEventListener("click", () => {
    if (state.lastReport !== null) {
      download("scenario.spec.json", exportSpecText(state.lastReport));
    }
  });
  el("export-report").addEventListener("click", () => {
    if (state.lastReport !== null) {
      download("scenario.report.json", exportReportText(state.lastReport));
    }
  });
  renderControls();
  renderPreview();
}

document.addEventListener("DOMContentLoaded", () => void boot());
