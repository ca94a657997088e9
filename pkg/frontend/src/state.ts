/**
 * Explorer session state and its transitions. Pure functions over an
 * immutable state value; the DOM layer re-renders from the result.
 */

import { isLegalScore } from "./factor.js";
import type { FactorKind, ReportDoc, ScorecardDoc } from "./types.js";

export interface ExplorerState {
  specId: string | null;
  region: string | null;
  cards: { ceiling: ScorecardDoc | null; speed: ScorecardDoc | null };
  target: number | null;
  lastReport: ReportDoc | null;
  /** Set on any edit since the last successful recompute. */
  dirty: boolean;
}

export function initialState(): ExplorerState {
  return {
    specId: null,
    region: null,
    cards: { ceiling: null, speed: null },
    target: null,
    lastReport: null,
    dirty: false,
  };
}

export function selectSpec(state: ExplorerState, specId: string): ExplorerState {
  if (specId === state.specId) {
    return state;
  }
  return { ...state, specId, lastReport: null, dirty: true };
}

export function loadCards(
  state: ExplorerState,
  region: string,
  ceiling: ScorecardDoc,
  speed: ScorecardDoc,
): ExplorerState {
  return { ...state, region, cards: { ceiling, speed }, dirty: true };
}

/**
 * Apply one score edit. Illegal scores throw (controls should make them
 * unreachable); a no-op edit returns the state unchanged with the dirty
 * flag untouched.
 */
export function editScore(
  state: ExplorerState,
  kind: FactorKind,
  indexId: string,
  score: number,
): ExplorerState {
  const card = state.cards[kind];
  if (card === null) {
    throw new Error(`no ${kind} card loaded`);
  }
  const index = card.indices.find((item) => item.id === indexId);
  if (index === undefined) {
    throw new Error(`card has no index ${indexId}`);
  }
  if (!isLegalScore(index, score)) {
    throw new Error(`score ${score} is not legal for index ${indexId}`);
  }
  if (card.entries[indexId] === score) {
    return state;
  }
  const edited: ScorecardDoc = {
    ...card,
    entries: { ...card.entries, [indexId]: score },
  };
  return { ...state, cards: { ...state.cards, [kind]: edited }, dirty: true };
}

export function setTarget(state: ExplorerState, target: number | null): ExplorerState {
  if (target === state.target) {
    return state;
  }
  if (target !== null && (!Number.isFinite(target) || target <= 0)) {
    throw new Error(`target must be a positive number, got ${target}`);
  }
  return { ...state, target, dirty: true };
}

/** A successful recompute stores the report and clears the dirty flag. */
export function applyReport(state: ExplorerState, report: ReportDoc): ExplorerState {
  return { ...state, lastReport: report, dirty: false };
}

export function canExport(state: ExplorerState): boolean {
  return state.lastReport !== null && !state.dirty;
}
