/**
 * Reader-facing indicator: a compact badge that expands into the full
 * explanation card and collapses back. Expanded is reachable only from
 * compact; collapsing restores the identical badge. A malformed payload
 * renders an inline error placeholder, never a blank widget.
 */

import type { CompactPayload, ExpandedPayload, EvidenceToken } from './types';

const SUMMARY_KEYS = ['publication', 'method', 'experience', 'remarks'] as const;
const EVIDENCE_TOKENS: EvidenceToken[] = ['low', 'medium', 'high'];

export type ReaderMode = 'reader_compact' | 'reader_expanded';

export function validateCompactPayload(payload: unknown): payload is CompactPayload {
  if (!payload || typeof payload !== 'object') return false;
  const p = payload as Partial<CompactPayload>;
  if (!EVIDENCE_TOKENS.includes(p.evidence as EvidenceToken)) return false;
  if (typeof p.evidence_label !== 'string') return false;
  if (!Array.isArray(p.summaries) || p.summaries.length !== 4) return false;
  for (let i = 0; i < 4; i += 1) {
    const s = p.summaries[i];
    if (!s || s.key !== SUMMARY_KEYS[i]) return false;
    if (typeof s.label !== 'string' || typeof s.value !== 'string') return false;
  }
  if (!p.assessment_ref || typeof p.assessment_ref.id !== 'string') return false;
  return true;
}

export function validateExpandedPayload(payload: unknown): payload is ExpandedPayload {
  if (!validateCompactPayload(payload)) return false;
  const p = payload as Partial<ExpandedPayload>;
  if (!p.explanations || typeof p.explanations !== 'object') return false;
  if (!Array.isArray(p.remarks) || !Array.isArray(p.links)) return false;
  if (p.evidence !== 'low' && typeof p.disclaimer !== 'string') return false;
  return true;
}

export function renderErrorPlaceholder(container: HTMLElement, message: string): void {
  container.textContent = '';
  const box = container.ownerDocument.createElement('div');
  box.className = 'sei-error';
  box.setAttribute('role', 'note');
  box.textContent = `Scientific evidence indicator unavailable: ${message}`;
  container.appendChild(box);
}

/**
 * Static markup naming the evidence level, for scripting-disabled pages.
 * Hosts render this server-side inside the mount container; the widget
 * replaces it once live data arrives.
 */
export function fallbackHtml(payload: CompactPayload): string {
  const items = payload.summaries
    .map((s) => `<li>${escapeHtml(s.label)}: ${escapeHtml(s.value)}</li>`)
    .join('');
  return (
    `<div class="sei-fallback">Scientific evidence level: ` +
    `<strong>${escapeHtml(payload.evidence_label)}</strong><ul>${items}</ul></div>`
  );
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export interface BadgeHandle {
  mode(): ReaderMode;
  expand(): void;
  collapse(): void;
}

/**
 * Render the badge for one source's expanded payload (the card content is
 * carried along so expanding needs no further request). Returns a handle
 * exposing the compact/expanded state machine.
 */
export function renderBadge(container: HTMLElement, payload: ExpandedPayload): BadgeHandle {
  if (!validateExpandedPayload(payload)) {
    renderErrorPlaceholder(container, 'malformed indicator payload');
    return {
      mode: () => 'reader_compact',
      expand: () => undefined,
      collapse: () => undefined,
    };
  }

  const doc = container.ownerDocument;
  let mode: ReaderMode = 'reader_compact';

  const renderCompact = () => {
    mode = 'reader_compact';
    container.textContent = '';
    const badge = doc.createElement('div');
    badge.className = `sei-badge sei-evidence-${payload.evidence}`;
    badge.setAttribute('role', 'button');
    badge.setAttribute('tabindex', '0');
    badge.setAttribute('aria-expanded', 'false');

    const level = doc.createElement('span');
    level.className = 'sei-level';
    level.textContent = payload.evidence_label;
    badge.appendChild(level);

    const list = doc.createElement('ul');
    list.className = 'sei-summaries';
    for (const summary of payload.summaries) {
      const item = doc.createElement('li');
      item.dataset.key = summary.key;
      const label = doc.createElement('span');
      label.className = 'sei-summary-label';
      label.textContent = summary.label;
      const value = doc.createElement('span');
      value.className = 'sei-summary-value';
      value.textContent = summary.value;
      item.append(label, value);
      list.appendChild(item);
    }
    badge.appendChild(list);

    const activate = () => renderExpanded();
    badge.addEventListener('click', activate);
    badge.addEventListener('keydown', (event: KeyboardEvent) => {
      if (event.key === 'Enter' || event.key === ' ') {
        event.preventDefault();
        activate();
      }
    });
    container.appendChild(badge);
  };

  const renderExpanded = () => {
    mode = 'reader_expanded';
    container.textContent = '';
    const card = doc.createElement('div');
    card.className = `sei-card sei-evidence-${payload.evidence}`;
    card.setAttribute('aria-expanded', 'true');

    const level = doc.createElement('span');
    level.className = 'sei-level';
    level.textContent = payload.evidence_label;
    card.appendChild(level);

    const list = doc.createElement('ul');
    list.className = 'sei-summaries';
    for (const summary of payload.summaries) {
      const item = doc.createElement('li');
      item.dataset.key = summary.key;
      const label = doc.createElement('span');
      label.className = 'sei-summary-label';
      label.textContent = summary.label;
      const value = doc.createElement('span');
      value.className = 'sei-summary-value';
      value.textContent = summary.value;
      const explanation = doc.createElement('p');
      explanation.className = 'sei-explanation';
      explanation.textContent = payload.explanations[summary.key] ?? '';
      item.append(label, value, explanation);
      list.appendChild(item);
    }
    card.appendChild(list);

    if (payload.remarks.length > 0) {
      const remarks = doc.createElement('ul');
      remarks.className = 'sei-remarks';
      for (const remark of payload.remarks) {
        const item = doc.createElement('li');
        item.className = `sei-remark-${remark.severity}`;
        item.textContent = remark.text;
        remarks.appendChild(item);
      }
      card.appendChild(remarks);
    }

    if (payload.disclaimer) {
      const disclaimer = doc.createElement('p');
      disclaimer.className = 'sei-disclaimer';
      disclaimer.textContent = payload.disclaimer;
      card.appendChild(disclaimer);
    }

    const links = doc.createElement('ul');
    links.className = 'sei-links';
    for (const slot of payload.links) {
      if (!slot.url) continue;
      const item = doc.createElement('li');
      const anchor = doc.createElement('a');
      anchor.href = slot.url;
      anchor.textContent = slot.label;
      item.appendChild(anchor);
      links.appendChild(item);
    }
    if (links.childElementCount > 0) card.appendChild(links);

    const collapse = doc.createElement('button');
    collapse.type = 'button';
    collapse.className = 'sei-collapse';
    collapse.textContent = 'Close';
    collapse.addEventListener('click', () => renderCompact());
    card.appendChild(collapse);

    container.appendChild(card);
  };

  renderCompact();
  return {
    mode: () => mode,
    expand: () => {
      if (mode === 'reader_compact') renderExpanded();
    },
    collapse: () => {
      if (mode === 'reader_expanded') renderCompact();
    },
  };
}
