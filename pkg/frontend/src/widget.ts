/**
 * Embedding entry point. One mount call per container:
 *
 *   mount(el, { articleId: "article-1", baseUrl: "https://…" })          // reader badges
 *   mount(el, { mode: "journalist_form", baseUrl: "…", articleId: "…" }) // entry form
 *
 * Reader containers may carry server-rendered fallback content (see
 * `fallbackHtml`); it stays in place until live payloads arrive and is
 * replaced by an error placeholder, never a blank, if the service is
 * unreachable.
 */

import { ApiClient } from './api';
import { BadgeHandle, renderBadge, renderErrorPlaceholder } from './badge';
import { createJournalistForm, FormHandle } from './form';

export type WidgetMode = 'reader' | 'journalist_form';

export interface MountOptions {
  articleId: string;
  baseUrl?: string;
  mode?: WidgetMode;
  fetchFn?: typeof fetch;
}

export interface ReaderHandle {
  kind: 'reader';
  badges: BadgeHandle[];
}

export interface JournalistHandle {
  kind: 'journalist_form';
  form: FormHandle;
}

export async function mount(
  container: HTMLElement,
  options: MountOptions,
): Promise<ReaderHandle | JournalistHandle> {
  const api = new ApiClient(options.baseUrl ?? '', options.fetchFn ?? fetch);
  if (options.mode === 'journalist_form') {
    container.textContent = '';
    const form = createJournalistForm(container, api, { articleId: options.articleId });
    return { kind: 'journalist_form', form };
  }

  const result = await api.getIndicators(options.articleId, 'expanded');
  if (result.status !== 200 || result.body === null) {
    renderErrorPlaceholder(container, result.errors[0]?.message ?? 'service unreachable');
    return { kind: 'reader', badges: [] };
  }
  container.textContent = '';
  const badges: BadgeHandle[] = [];
  for (const payload of result.body) {
    const slot = container.ownerDocument.createElement('div');
    slot.className = 'sei-source';
    container.appendChild(slot);
    badges.push(renderBadge(slot, payload));
  }
  if (badges.length === 0) {
    const note = container.ownerDocument.createElement('p');
    note.className = 'sei-empty';
    note.textContent = 'No assessed scientific sources for this story.';
    container.appendChild(note);
  }
  return { kind: 'reader', badges };
}
