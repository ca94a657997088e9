/**
 * Client-side intensity-factor arithmetic.
 *
 * Deliberately implemented independently of the server (same definition,
 * different code) so the live preview can be checked against the
 * authoritative POST /api/factor result: both must agree within 1e-6.
 */

import type { EvaluationIndexDoc, ScorecardDoc } from "./types.js";

export const FIVE_LEVEL_SCORES = [0, 25, 50, 75, 100] as const;

/** The discrete score set for a control, or null for a 0..100 continuum. */
export function legalScores(index: EvaluationIndexDoc): readonly number[] | null {
  return index.kind === "five_level" ? FIVE_LEVEL_SCORES : null;
}

export function isLegalScore(index: EvaluationIndexDoc, score: number): boolean {
  if (!Number.isFinite(score) || score < 0 || score > 100) {
    return false;
  }
  const grid = legalScores(index);
  return grid === null || grid.includes(score);
}

/** Weighted average of the card's scores on the [0, 1] scale. */
export function previewFactor(card: ScorecardDoc): number {
  let total = 0;
  for (const index of card.indices) {
    const score = card.entries[index.id];
    if (score === undefined) {
      throw new Error(`card has no entry for index ${index.id}`);
    }
    total += index.weight * score;
  }
  return total / 100;
}

/**
 * Client-side validation: a strict subset of the server's checks, so any
 * card that passes here is never rejected by the server.
 */
export function validateCard(card: ScorecardDoc): string[] {
  const problems: string[] = [];
  let weightSum = 0;
  for (const index of card.indices) {
    weightSum += index.weight;
    const score = card.entries[index.id];
    if (score === undefined) {
      problems.push(`missing entry for index ${index.id}`);
    } else if (!isLegalScore(index, score)) {
      problems.push(`score ${score} is not legal for index ${index.id}`);
    }
  }
  if (Math.abs(weightSum - 1) > 1e-9) {
    problems.push(`index weights sum to ${weightSum}, expected 1`);
  }
  const known = new Set(card.indices.map((index) => index.id));
  for (const id of Object.keys(card.entries)) {
    if (!known.has(id)) {
      problems.push(`entry ${id} has no matching index`);
    }
  }
  return problems;
}
