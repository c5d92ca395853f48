/**
 * Client-side duplicate of the server's aggregation rule, for instant
 * feedback in the journalist form. The server stays authoritative: on
 * submit the preview is reconciled against the server's derived value and
 * any divergence is surfaced as a hard error, never silently overridden.
 */

import type { DraftVariables, EvidenceToken, ExperienceToken } from './types';

export const METHOD_LABELS: readonly string[] = [
  'Systematic review / meta-analysis',
  'Randomized controlled trial',
  'Cohort study',
  'Case-control study',
  'Cross-sectional study',
  'Case series / case report',
  'Expert opinion / in-vitro / animal study',
];

export function methodLabel(rank: number): string {
  if (!Number.isInteger(rank) || rank < 1 || rank > 7) {
    throw new RangeError(`method rank must be 1..7, got ${rank}`);
  }
  return METHOD_LABELS[rank - 1];
}

/**
 * Low when the channel level is 0; High when the channel level is 2 or 3,
 * the method is in the top two ranks, and the team's maximum h-index is
 * strictly above 20; Medium otherwise.
 */
export function aggregateEvidence(bfi: number, rank: number, teamMaxH: number): EvidenceToken {
  if (!Number.isInteger(bfi) || bfi < 0 || bfi > 3) {
    throw new RangeError(`channel level must be 0..3, got ${bfi}`);
  }
  if (!Number.isInteger(rank) || rank < 1 || rank > 7) {
    throw new RangeError(`method rank must be 1..7, got ${rank}`);
  }
  if (teamMaxH < 0) {
    throw new RangeError('h-index must be non-negative');
  }
  if (bfi === 0) return 'low';
  if (bfi >= 2 && rank <= 2 && teamMaxH > 20) return 'high';
  return 'medium';
}

/** Bands with inclusive lower bounds: 0-20, 20-40, 40-60, 60+. */
export function classifyExperience(h: number): ExperienceToken {
  if (h < 0) throw new RangeError('h-index must be non-negative');
  if (h < 20) return 'less_experienced';
  if (h < 40) return 'experienced';
  if (h < 60) return 'very_experienced';
  return 'excellent';
}

export const EXPERIENCE_LABELS: Record<ExperienceToken, string> = {
  less_experienced: 'Less Experienced',
  experienced: 'Experienced',
  very_experienced: 'Very Experienced',
  excellent: 'Excellent',
};

export const EVIDENCE_LABELS: Record<EvidenceToken, string> = {
  low: 'Low',
  medium: 'Medium',
  high: 'High',
};

export function teamMaxH(hIndices: number[]): number | null {
  if (hIndices.length === 0) return null;
  return Math.max(...hIndices);
}

/**
 * Evidence level for a possibly incomplete draft, if already determined.
 * Channel level 0 forces Low regardless of the other variables.
 */
export function previewEvidence(draft: DraftVariables): EvidenceToken | null {
  if (draft.bfi === null || draft.bfi < 0 || draft.bfi > 3) return null;
  if (draft.bfi === 0) return 'low';
  const maxH = teamMaxH(draft.hIndices);
  if (draft.methodRank === null || maxH === null) return null;
  if (draft.methodRank < 1 || draft.methodRank > 7 || maxH < 0) return null;
  return aggregateEvidence(draft.bfi, draft.methodRank, maxH);
}

/** A remark is mandatory when the source is not peer reviewed (level 0). */
export function remarkRequired(draft: DraftVariables): boolean {
  return draft.bfi === 0 && draft.remarks.filter((r) => r.trim()).length === 0;
}
