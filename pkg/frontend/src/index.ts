export {
  aggregateEvidence,
  classifyExperience,
  previewEvidence,
  remarkRequired,
  teamMaxH,
  methodLabel,
  METHOD_LABELS,
  EVIDENCE_LABELS,
  EXPERIENCE_LABELS,
} from './aggregate';
export { ApiClient } from './api';
export type { ApiResult } from './api';
export {
  fallbackHtml,
  renderBadge,
  renderErrorPlaceholder,
  validateCompactPayload,
  validateExpandedPayload,
} from './badge';
export type { BadgeHandle, ReaderMode } from './badge';
export { createJournalistForm } from './form';
export type { FormHandle, FormOptions } from './form';
export { mount } from './widget';
export type { JournalistHandle, MountOptions, ReaderHandle, WidgetMode } from './widget';
export type * from './types';
