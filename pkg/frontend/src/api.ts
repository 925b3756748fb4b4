/** Thin typed client over the service API.
 *
 * The fetch implementation is injectable so tests can intercept requests and
 * verify that everything the UI shows is byte-derived from API payloads.
 */

import type {
  EntityPage, Entity, Flow, GraphData, LexiconSummary, ParagraphDetail,
  SearchPage, Stats, Timeline, TransferRule,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly error: string,
    public readonly detail: string,
  ) {
    super(`${error}: ${detail}`);
  }

  /** Artifact not computed for this store (server said 404). */
  get notComputed(): boolean {
    return this.status === 404 && this.error === "artifact_missing";
  }

  /** Network-level failure: service down or unreachable. */
  get unreachable(): boolean {
    return this.status === 0;
  }
}

export type QueryValue = string | number | undefined | null;

export function buildQuery(params: Record<string, QueryValue>): string {
  const search = new URLSearchParams();
  for (const [key, value] of Object.entries(params)) {
    if (value !== undefined && value !== null && value !== "") {
      search.set(key, String(value));
    }
  }
  const text = search.toString();
  return text ? `?${text}` : "";
}

export interface SearchParams {
  q?: string;
  label?: string;
  entity?: string;
  chapter?: number;
  page?: number;
  page_size?: number;
}

export class ApiClient {
  private readonly fetchImpl: typeof fetch;

  constructor(
    public readonly baseUrl: string,
    fetchImpl?: typeof fetch,
  ) {
    this.fetchImpl = fetchImpl ?? ((...args) => fetch(...args));
  }

  private async get<T>(path: string): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.baseUrl + path);
    } catch (err) {
      throw new ApiError(0, "unreachable", String(err));
    }
    let body: unknown = null;
    try {
      body = await response.json();
    } catch {
      body = null;
    }
    if (!response.ok) {
      const rec = (body ?? {}) as { error?: string; detail?: string };
      throw new ApiError(response.status, rec.error ?? "http_error",
        rec.detail ?? `HTTP ${response.status}`);
    }
    return body as T;
  }

  stats(): Promise<Stats> {
    return this.get("/api/stats");
  }

  searchParagraphs(params: SearchParams): Promise<SearchPage> {
    return this.get("/api/paragraphs" + buildQuery({ ...params }));
  }

  paragraph(paraId: string): Promise<ParagraphDetail> {
    return this.get(`/api/paragraphs/${encodeURIComponent(paraId)}`);
  }

  entities(type?: string, page = 1, pageSize = 50): Promise<EntityPage> {
    return this.get("/api/entities"
      + buildQuery({ type, page, page_size: pageSize }));
  }

  entity(canonicalId: string): Promise<Entity> {
    return this.get(`/api/entities/${encodeURIComponent(canonicalId)}`);
  }

  timeline(canonicalId: string): Promise<Timeline> {
    return this.get(`/api/entities/${encodeURIComponent(canonicalId)}/timeline`);
  }

  network(kind: "collocation" | "communication", minWeight: number):
      Promise<GraphData> {
    return this.get(`/api/networks/${kind}` + buildQuery({ min_weight: minWeight }));
  }

  transferRules(minSupport: number, minConfidence: number):
      Promise<{ rules: TransferRule[] }> {
    return this.get("/api/rules/transfers"
      + buildQuery({ min_support: minSupport, min_confidence: minConfidence }));
  }

  flows(): Promise<{ flows: Flow[] }> {
    return this.get("/api/transfers/flows");
  }

  lexicons(): Promise<{ lexicons: LexiconSummary[] }> {
    return this.get("/api/lexicons");
  }
}
