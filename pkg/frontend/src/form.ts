/**
 * Journalist form: enter the four variables for one source, watch the
 * evidence level preview update live, submit to the service. The preview
 * uses the client-side copy of the aggregation rule; the server's derived
 * value is compared on submit and a mismatch is a hard error because it
 * means the client and server rules have drifted apart.
 */

import { EVIDENCE_LABELS, METHOD_LABELS, previewEvidence, remarkRequired } from './aggregate';
import type { ApiClient } from './api';
import type { ChannelHit, DraftVariables, EvidenceToken } from './types';

export interface FormOptions {
  articleId?: string;
}

export interface FormHandle {
  form: HTMLFormElement;
  state(): DraftVariables;
  preview(): EvidenceToken | null;
  setChannel(hit: ChannelHit | null): void;
  setMethodRank(rank: number | null): void;
  setHIndices(text: string): void;
  setRemarks(text: string): void;
  submit(): Promise<void>;
  submitDisabled(): boolean;
  lastResult(): { id: string; version: number; evidence: EvidenceToken } | null;
}

export function createJournalistForm(
  container: HTMLElement,
  api: ApiClient,
  options: FormOptions = {},
): FormHandle {
  const doc = container.ownerDocument;
  const draft: DraftVariables = {
    bfi: null,
    bfiChannelFound: false,
    channelName: null,
    methodRank: null,
    hIndices: [],
    remarks: [],
  };

  // Bumped on every field change; a submission's response is discarded if
  // the form changed while it was in flight.
  let stateVersion = 0;
  let inFlight = false;
  let lastResult: { id: string; version: number; evidence: EvidenceToken } | null = null;

  const form = doc.createElement('form');
  form.className = 'sei-form';
  form.noValidate = true;

  // -- channel picker ----------------------------------------------------
  const channelField = field('channel', 'Scientific publication');
  const channelInput = doc.createElement('input');
  channelInput.type = 'search';
  channelInput.className = 'sei-channel-input';
  channelInput.placeholder = 'Search journal name or ISSN';
  const channelResults = doc.createElement('ul');
  channelResults.className = 'sei-channel-results';
  const channelPicked = doc.createElement('p');
  channelPicked.className = 'sei-channel-picked';
  channelPicked.textContent = 'No channel selected';
  const notListed = doc.createElement('button');
  notListed.type = 'button';
  notListed.className = 'sei-channel-not-listed';
  notListed.textContent = 'Not in the registry';
  channelField.append(channelInput, channelResults, notListed, channelPicked);

  // -- method selector ---------------------------------------------------
  const methodField = field('method', 'Method');
  const methodSelect = doc.createElement('select');
  methodSelect.className = 'sei-method-select';
  const blank = doc.createElement('option');
  blank.value = '';
  blank.textContent = 'Choose a study design…';
  methodSelect.appendChild(blank);
  METHOD_LABELS.forEach((label, index) => {
    const option = doc.createElement('option');
    option.value = String(index + 1);
    option.textContent = `${index + 1}. ${label}`;
    methodSelect.appendChild(option);
  });
  methodField.appendChild(methodSelect);

  // -- author h entry ----------------------------------------------------
  const hField = field('h', "Authors' h-indexes");
  const hInput = doc.createElement('input');
  hInput.type = 'text';
  hInput.className = 'sei-h-input';
  hInput.placeholder = 'One per author, e.g. 25; 12';
  hField.appendChild(hInput);

  // -- remarks editor ----------------------------------------------------
  const remarksField = field('remarks', 'Special remarks');
  const remarksInput = doc.createElement('textarea');
  remarksInput.className = 'sei-remarks-input';
  remarksInput.placeholder = 'One remark per line';
  const remarkHint = doc.createElement('p');
  remarkHint.className = 'sei-remark-required';
  remarkHint.hidden = true;
  remarkHint.textContent =
    'This source is not peer reviewed per the registry standard; ' +
    'an explanation for readers is required before saving.';
  remarksField.append(remarksInput, remarkHint);

  // -- preview, errors, submit -------------------------------------------
  const preview = doc.createElement('p');
  preview.className = 'sei-preview';
  const previewValue = doc.createElement('strong');
  previewValue.className = 'sei-preview-value';
  preview.append('Evidence level: ', previewValue);

  const formError = doc.createElement('p');
  formError.className = 'sei-form-error';
  formError.hidden = true;

  const submitButton = doc.createElement('button');
  submitButton.type = 'submit';
  submitButton.className = 'sei-submit';
  submitButton.textContent = 'Save assessment';

  form.append(channelField, methodField, hField, remarksField, preview, formError, submitButton);
  container.appendChild(form);

  const currentPreview = (): EvidenceToken | null => previewEvidence(draft);

  const refresh = () => {
    const level = currentPreview();
    previewValue.textContent = level === null ? 'undetermined' : EVIDENCE_LABELS[level];
    previewValue.dataset.evidence = level ?? '';
    const missingRemark = remarkRequired(draft);
    remarkHint.hidden = !missingRemark;
    remarksField.classList.toggle('sei-field-error', missingRemark);
    submitButton.disabled = missingRemark || inFlight;
  };

  const changed = () => {
    stateVersion += 1;
    formError.hidden = true;
    refresh();
  };

  const setChannel = (hit: ChannelHit | null) => {
    if (hit === null) {
      draft.bfi = 0;
      draft.bfiChannelFound = false;
      draft.channelName = null;
      channelPicked.textContent = 'Not in the BFI registry (level 0)';
    } else {
      draft.bfi = hit.bfi_level;
      draft.bfiChannelFound = true;
      draft.channelName = hit.canonical_name;
      channelPicked.textContent = `${hit.canonical_name} (level ${hit.bfi_level})`;
    }
    channelResults.textContent = '';
    changed();
  };

  channelInput.addEventListener('input', async () => {
    const query = channelInput.value.trim();
    if (!query) {
      channelResults.textContent = '';
      return;
    }
    const result = await api.searchChannels(query);
    channelResults.textContent = '';
    for (const hit of result.body ?? []) {
      const item = doc.createElement('li');
      const pick = doc.createElement('button');
      pick.type = 'button';
      pick.textContent = `${hit.canonical_name} (level ${hit.bfi_level})`;
      pick.addEventListener('click', () => setChannel(hit));
      item.appendChild(pick);
      channelResults.appendChild(item);
    }
  });
  notListed.addEventListener('click', () => setChannel(null));

  methodSelect.addEventListener('change', () => {
    draft.methodRank = methodSelect.value ? Number(methodSelect.value) : null;
    changed();
  });

  hInput.addEventListener('input', () => {
    draft.hIndices = hInput.value
      .split(';')
      .map((part) => part.trim())
      .filter((part) => part.length > 0)
      .map((part) => Number(part))
      .filter((n) => Number.isInteger(n) && n >= 0);
    changed();
  });

  remarksInput.addEventListener('input', () => {
    draft.remarks = remarksInput.value
      .split('\n')
      .map((line) => line.trim())
      .filter((line) => line.length > 0);
    changed();
  });

  const showError = (message: string) => {
    formError.textContent = message;
    formError.hidden = false;
  };

  const clearFieldErrors = () => {
    for (const el of Array.from(form.querySelectorAll('.sei-field-error'))) {
      el.classList.remove('sei-field-error');
    }
  };

  const submit = async (): Promise<void> => {
    if (submitButton.disabled || inFlight) return;
    clearFieldErrors();
    formError.hidden = true;

    const captured = stateVersion;
    const expected = currentPreview();
    const payload: Record<string, unknown> = {
      bfi: draft.bfi,
      bfi_channel_found: draft.bfiChannelFound,
      method: draft.methodRank,
      h_indices: draft.hIndices,
      remarks: draft.remarks,
    };
    if (options.articleId) payload.article_id = options.articleId;

    inFlight = true;
    refresh();
    const result = await api.postAssessment(payload);
    inFlight = false;
    refresh();
    if (captured !== stateVersion) {
      return; // the form changed while the request was in flight
    }
    if (result.status === 201 && result.body) {
      if (expected !== null && result.body.evidence !== expected) {
        showError(
          `Rule drift: this form previewed "${expected}" but the server derived ` +
            `"${result.body.evidence}". The assessment was saved; report this bug.`,
        );
      }
      lastResult = {
        id: result.body.id,
        version: result.body.version,
        evidence: result.body.evidence,
      };
      form.dataset.savedId = result.body.id;
      return;
    }
    if (result.status === 422) {
      for (const error of result.errors) {
        if (error.code === 'MISSING_REMARK_FOR_UNREVIEWED' || error.field.startsWith('remarks')) {
          remarksField.classList.add('sei-field-error');
        } else if (error.field.startsWith('method')) {
          methodField.classList.add('sei-field-error');
        } else if (error.field.startsWith('bfi') || error.field.startsWith('channel')) {
          channelField.classList.add('sei-field-error');
        } else if (error.field.startsWith('h_indices') || error.field.startsWith('team')) {
          hField.classList.add('sei-field-error');
        }
      }
      showError(result.errors.map((e) => e.message).join('; '));
      return;
    }
    showError(
      result.errors.map((e) => e.message).join('; ') || `request failed (${result.status})`,
    );
  };

  form.addEventListener('submit', (event) => {
    event.preventDefault();
    void submit();
  });

  refresh();

  return {
    form,
    state: () => ({ ...draft, hIndices: [...draft.hIndices], remarks: [...draft.remarks] }),
    preview: currentPreview,
    setChannel,
    setMethodRank: (rank) => {
      draft.methodRank = rank;
      methodSelect.value = rank === null ? '' : String(rank);
      changed();
    },
    setHIndices: (text) => {
      hInput.value = text;
      hInput.dispatchEvent(new Event('input'));
    },
    setRemarks: (text) => {
      remarksInput.value = text;
      remarksInput.dispatchEvent(new Event('input'));
    },
    submit,
    submitDisabled: () => submitButton.disabled,
    lastResult: () => lastResult,
  };

  function field(key: string, labelText: string): HTMLDivElement {
    const wrapper = doc.createElement('div');
    wrapper.className = `sei-field sei-field-${key}`;
    const label = doc.createElement('label');
    label.textContent = labelText;
    wrapper.appendChild(label);
    return wrapper;
  }
}
