// Typed client for the annotation service. All annotation state flows through
// these endpoints; the UI never touches the store file and never classifies
// locally. Server error bodies are surfaced verbatim via ApiError.

import type {
  ApiErrorBody,
  ClassificationResultPayload,
  DocumentPayload,
  FramePayload,
  GestureFeaturesPayload,
  GesturePayload,
  SentencePayload,
  StatsPayload,
  ValidationReportPayload,
} from './types.js';

export class ApiError extends Error {
  readonly status: number;
  readonly body: ApiErrorBody;

  constructor(status: number, body: ApiErrorBody) {
    super(body.message);
    this.name = 'ApiError';
    this.status = status;
    this.body = body;
  }

  get isConflict(): boolean {
    return this.body.code === 'conflict';
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export interface ExplainContext {
  utterer: string;
  comprehender: string;
  time?: string;
  place?: string;
  interaction_kind?: string;
  include_content?: boolean;
}

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl: string, fetchImpl?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/$/, '');
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { 'content-type': 'application/json' };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, payload as ApiErrorBody);
    }
    return payload as T;
  }

  async getFrames(): Promise<FramePayload[]> {
    const body = await this.request<{ frames: FramePayload[] }>('GET', '/frames');
    return body.frames;
  }

  getFrame(name: string): Promise<FramePayload> {
    return this.request('GET', `/frames/${encodeURIComponent(name)}`);
  }

  async getDocuments(): Promise<DocumentPayload[]> {
    const body = await this.request<{ documents: DocumentPayload[] }>('GET', '/documents');
    return body.documents;
  }

  postDocument(doc: DocumentPayload): Promise<DocumentPayload> {
    return this.request('POST', '/documents', doc);
  }

  async getSentences(documentId: string): Promise<SentencePayload[]> {
    const body = await this.request<{ sentences: SentencePayload[] }>(
      'GET',
      `/documents/${encodeURIComponent(documentId)}/sentences`,
    );
    return body.sentences;
  }

  async getGestures(): Promise<GesturePayload[]> {
    const body = await this.request<{ gestures: GesturePayload[] }>('GET', '/gestures');
    return body.gestures;
  }

  getGesture(gestureId: string): Promise<GesturePayload> {
    return this.request('GET', `/gestures/${encodeURIComponent(gestureId)}`);
  }

  postGesture(gesture: GesturePayload): Promise<GesturePayload> {
    return this.request('POST', '/gestures', gesture);
  }

  putGesture(gestureId: string, gesture: GesturePayload): Promise<GesturePayload> {
    return this.request('PUT', `/gestures/${encodeURIComponent(gestureId)}`, gesture);
  }

  classify(
    features: GestureFeaturesPayload,
    tau?: string,
    delta?: string,
  ): Promise<ClassificationResultPayload> {
    const body: Record<string, unknown> = { features };
    if (tau !== undefined) body.tau = tau;
    if (delta !== undefined) body.delta = delta;
    return this.request('POST', '/classify', body);
  }

  explainBlend(frame: string, context: ExplainContext): Promise<{ networks: unknown[] }> {
    return this.request('POST', '/blend/explain', { frame, context });
  }

  getStats(): Promise<StatsPayload> {
    return this.request('GET', '/stats');
  }

  validate(): Promise<ValidationReportPayload> {
    return this.request('POST', '/validate');
  }
}
