// @vitest-environment jsdom
import { describe, expect, it } from 'vitest';

import { fallbackHtml, renderBadge, validateCompactPayload } from '../src/badge';
import type { ExpandedPayload } from '../src/types';

function payload(overrides: Partial<ExpandedPayload> = {}): ExpandedPayload {
  return {
    evidence: 'medium',
    evidence_label: 'Medium',
    summaries: [
      { key: 'publication', label: 'Scientific publication', value: 'BFI level 1' },
      { key: 'method', label: 'Method', value: 'Cohort study' },
      { key: 'experience', label: "Researcher's Experience", value: 'Very Experienced' },
      { key: 'remarks', label: 'Special Remarks', value: 'None' },
    ],
    assessment_ref: { id: 'a', version: 1 },
    explanations: {
      publication: 'about the channel',
      method: 'about the design',
      experience: 'about the team',
      remarks: 'about caveats',
    },
    remarks: [],
    bfi_channel_found: true,
    links: [
      { key: 'assessing_evidence', label: 'How scientists weigh evidence', url: null },
      { key: 'about_indicator', label: 'About', url: 'https://example.org/about' },
    ],
    disclaimer: 'The Medium/High line is a rule of thumb.',
    ...overrides,
  };
}

function summariesIn(container: HTMLElement): Array<[string, string]> {
  return Array.from(container.querySelectorAll('.sei-summaries li')).map((li) => [
    li.querySelector('.sei-summary-label')?.textContent ?? '',
    li.querySelector('.sei-summary-value')?.textContent ?? '',
  ]);
}

describe('compact badge', () => {
  it('shows the evidence level and the four summaries in fixed order', () => {
    const container = document.createElement('div');
    renderBadge(container, payload());
    expect(container.querySelector('.sei-level')?.textContent).toBe('Medium');
    expect(summariesIn(container)).toEqual([
      ['Scientific publication', 'BFI level 1'],
      ['Method', 'Cohort study'],
      ["Researcher's Experience", 'Very Experienced'],
      ['Special Remarks', 'None'],
    ]);
  });

  it('labels high payloads High', () => {
    const container = document.createElement('div');
    renderBadge(container, payload({ evidence: 'high', evidence_label: 'High' }));
    expect(container.querySelector('.sei-badge')?.className).toContain('sei-evidence-high');
    expect(container.querySelector('.sei-level')?.textContent).toBe('High');
  });

  it('renders an error placeholder for malformed payloads, never a blank', () => {
    const container = document.createElement('div');
    const bad = payload();
    bad.summaries = bad.summaries.slice(0, 3); // one summary missing
    renderBadge(container, bad);
    expect(container.textContent).toContain('indicator unavailable');
    expect(container.textContent?.length).toBeGreaterThan(0);
  });

  it('rejects payloads with reordered summaries', () => {
    const good = payload();
    expect(validateCompactPayload(good)).toBe(true);
    const reordered = payload();
    reordered.summaries = [...reordered.summaries].reverse();
    expect(validateCompactPayload(reordered)).toBe(false);
  });
});

describe('expand and collapse contract', () => {
  it('round-trips compact -> expanded -> compact preserving all four summaries', () => {
    const container = document.createElement('div');
    const handle = renderBadge(container, payload());
    const before = summariesIn(container);
    expect(handle.mode()).toBe('reader_compact');

    (container.querySelector('.sei-badge') as HTMLElement).click();
    expect(handle.mode()).toBe('reader_expanded');
    expect(summariesIn(container)).toEqual(before); // card shows all four variables
    expect(container.querySelector('.sei-disclaimer')?.textContent).toContain('rule of thumb');

    (container.querySelector('.sei-collapse') as HTMLElement).click();
    expect(handle.mode()).toBe('reader_compact');
    expect(summariesIn(container)).toEqual(before);
  });

  it('expands via keyboard activation', () => {
    const container = document.createElement('div');
    const handle = renderBadge(container, payload());
    const badge = container.querySelector('.sei-badge') as HTMLElement;
    badge.dispatchEvent(new KeyboardEvent('keydown', { key: 'Enter', bubbles: true }));
    expect(handle.mode()).toBe('reader_expanded');
  });

  it('shows the heuristic disclaimer on medium and high, not on low', () => {
    for (const [evidence, label, expected] of [
      ['medium', 'Medium', true],
      ['high', 'High', true],
      ['low', 'Low', false],
    ] as const) {
      const container = document.createElement('div');
      const handle = renderBadge(
        container,
        payload({
          evidence,
          evidence_label: label,
          disclaimer: evidence === 'low' ? null : 'The Medium/High line is a rule of thumb.',
        }),
      );
      handle.expand();
      expect(container.querySelector('.sei-disclaimer') !== null).toBe(expected);
    }
  });

  it('shows remark texts and configured links only when present', () => {
    const container = document.createElement('div');
    const handle = renderBadge(
      container,
      payload({ remarks: [{ text: 'industry funded', severity: 'warning' }] }),
    );
    handle.expand();
    expect(container.querySelector('.sei-remark-warning')?.textContent).toBe('industry funded');
    const links = Array.from(container.querySelectorAll('.sei-links a'));
    expect(links.map((a) => a.textContent)).toEqual(['About']); // null slot omitted
  });

  it('expand() is a no-op unless compact, collapse() unless expanded', () => {
    const container = document.createElement('div');
    const handle = renderBadge(container, payload());
    handle.collapse();
    expect(handle.mode()).toBe('reader_compact');
    handle.expand();
    handle.expand();
    expect(handle.mode()).toBe('reader_expanded');
  });
});

describe('progressive enhancement fallback', () => {
  it('names the evidence level in static markup', () => {
    const html = fallbackHtml(payload());
    expect(html).toContain('Scientific evidence level');
    expect(html).toContain('<strong>Medium</strong>');
    expect(html).toContain('Cohort study');
    expect(html).not.toContain('<script');
  });

  it('escapes payload text', () => {
    const p = payload();
    p.summaries[1].value = '<img src=x>';
    expect(fallbackHtml(p)).not.toContain('<img');
  });
});
