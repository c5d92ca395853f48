/** Wire types mirroring the assessment service's JSON payloads. */

export type EvidenceToken = 'low' | 'medium' | 'high';

export type ExperienceToken =
  | 'less_experienced'
  | 'experienced'
  | 'very_experienced'
  | 'excellent';

export interface VariableSummary {
  key: string;
  label: string;
  value: string;
}

export interface AssessmentRef {
  id: string;
  version: number;
}

export interface CompactPayload {
  evidence: EvidenceToken;
  evidence_label: string;
  summaries: VariableSummary[];
  assessment_ref: AssessmentRef;
}

export interface RemarkPayload {
  text: string;
  severity: 'info' | 'warning';
}

export interface LinkSlot {
  key: string;
  label: string;
  url: string | null;
}

export interface ExpandedPayload extends CompactPayload {
  explanations: Record<string, string>;
  remarks: RemarkPayload[];
  bfi_channel_found: boolean;
  links: LinkSlot[];
  disclaimer: string | null;
}

export interface ChannelHit {
  canonical_name: string;
  issns: string[];
  bfi_level: number;
}

export interface ApiError {
  code: string;
  field: string;
  message: string;
}

export interface AssessmentCreated {
  id: string;
  version: number;
  evidence: EvidenceToken;
  experience: ExperienceToken;
}

/** The journalist form's working state before submission. */
export interface DraftVariables {
  bfi: number | null;
  bfiChannelFound: boolean;
  channelName: string | null;
  methodRank: number | null;
  hIndices: number[];
  remarks: string[];
}
