/** Thin fetch client for the assessment service. */

import type {
  ApiError,
  AssessmentCreated,
  ChannelHit,
  CompactPayload,
  ExpandedPayload,
} from './types';

export interface ApiResult<T> {
  status: number;
  body: T | null;
  errors: ApiError[];
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = '',
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<ApiResult<T>> {
    let response: Response;
    try {
      response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    } catch (exc) {
      return {
        status: 0,
        body: null,
        errors: [{ code: 'NETWORK_FAILURE', field: '', message: String(exc) }],
      };
    }
    let parsed: unknown = null;
    try {
      parsed = await response.json();
    } catch {
      parsed = null;
    }
    if (response.ok) {
      return { status: response.status, body: parsed as T, errors: [] };
    }
    const errors =
      parsed && typeof parsed === 'object' && Array.isArray((parsed as { errors?: unknown }).errors)
        ? ((parsed as { errors: ApiError[] }).errors)
        : [{ code: 'HTTP_ERROR', field: '', message: `status ${response.status}` }];
    return { status: response.status, body: null, errors };
  }

  searchChannels(query: string): Promise<ApiResult<ChannelHit[]>> {
    return this.request(`/registry/channels?q=${encodeURIComponent(query)}`);
  }

  postAssessment(payload: Record<string, unknown>): Promise<ApiResult<AssessmentCreated>> {
    return this.request('/assessments', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(payload),
    });
  }

  getIndicators(
    articleId: string,
    view: 'compact',
  ): Promise<ApiResult<CompactPayload[]>>;
  getIndicators(
    articleId: string,
    view: 'expanded',
  ): Promise<ApiResult<ExpandedPayload[]>>;
  getIndicators(articleId: string, view: 'compact' | 'expanded') {
    return this.request(
      `/articles/${encodeURIComponent(articleId)}/indicators?view=${view}`,
    );
  }
}
