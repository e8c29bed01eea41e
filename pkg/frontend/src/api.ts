// Typed client for the scholargraph JSON API. Every view renders only
// fields that came back from these calls; nothing is synthesized here.

export interface ScholarSummary {
  id: string;
  name: string;
  inst: string;
}

export interface QueryResponse {
  query: { kind: string; name: string; relation: string | null };
  status: "ok" | "ambiguous" | "no_match" | "no_relation";
  resolved: { id: string; name: string } | null;
  results: ScholarSummary[];
}

export interface EgoNode {
  id: string;
  name: string;
  tag: "center" | "advisor" | "advisee" | "coauthor" | "other";
  size: number;
}

export interface EgoLink {
  src: string;
  dst: string;
  kind: string;
  weight: number;
}

export interface EgoDoc {
  center: string;
  kind: string;
  nodes: EgoNode[];
  links: EgoLink[];
  geo?: { id: string; lat: number; lng: number }[];
  series?: Record<string, number>;
}

export interface Profile {
  id: string;
  name: string;
  inst: string;
  first_pub_year: number;
  pub_ids: string[];
  fields: string[];
  measures: Record<string, number>;
}

export interface RankingEntry {
  id: string;
  name: string;
  value: number;
}

export interface RankingsResponse {
  measure: string;
  total: number;
  offset: number;
  limit: number;
  entries: RankingEntry[];
}

export interface PreferencePayload {
  field_tags: string[];
  min_advisees: number;
  min_citations: number;
  institution: string | null;
  limit: number;
}

export interface Recommendation {
  id: string;
  name: string;
  score: number;
  reasons: string[];
  ego_preview: {
    advisees: { id: string; name: string }[];
    coauthors: { id: string; name: string; weight: number }[];
  };
}

export interface RecommendResponse {
  status: "ok" | "no_candidates";
  recommendations: Recommendation[];
}

export interface ApiErrorBody {
  status: number;
  kind: string;
  message: string;
}

export class ApiError extends Error {
  body: ApiErrorBody;
  constructor(body: ApiErrorBody) {
    super(body.message);
    this.body = body;
  }
}

/** Thrown away by callers: a newer request on the same channel finished first. */
export const STALE = Symbol("stale-response");

export class ApiClient {
  base: string;
  calls: string[] = []; // visible log of issued requests (used by tests/debug)
  private seq = new Map<string, number>();

  constructor(base = "") {
    this.base = base;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    this.calls.push(`${method} ${path}`);
    const res = await fetch(this.base + path, {
      method,
      headers: body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await res.text();
    let parsed: unknown;
    try {
      parsed = JSON.parse(text);
    } catch {
      if (!res.ok) throw new ApiError({ status: res.status, kind: "http_error", message: text });
      return text as unknown as T;
    }
    if (!res.ok) throw new ApiError(parsed as ApiErrorBody);
    return parsed as T;
  }

  /**
   * Sequence-numbered request: concurrent calls on one channel resolve in
   * any order, but only the latest one returns data; superseded calls
   * resolve to STALE and must be ignored by the caller.
   */
  private async latest<T>(channel: string, method: string, path: string, body?: unknown): Promise<T | typeof STALE> {
    const mine = (this.seq.get(channel) ?? 0) + 1;
    this.seq.set(channel, mine);
    const result = await this.request<T>(method, path, body);
    if (this.seq.get(channel) !== mine) return STALE;
    return result;
  }

  search(q: string, limit = 20) {
    const qs = new URLSearchParams({ q, limit: String(limit) });
    return this.latest<QueryResponse>("search", "GET", `/scholars?${qs}`);
  }

  profile(id: string) {
    return this.request<Profile>("GET", `/scholars/${encodeURIComponent(id)}`);
  }

  ego(id: string, kind: string, opts: { geo?: boolean; series?: boolean } = {}) {
    const qs = new URLSearchParams({ kind });
    if (opts.geo) qs.set("geo", "true");
    if (opts.series) qs.set("series", "true");
    return this.latest<EgoDoc>("ego", "GET", `/scholars/${encodeURIComponent(id)}/ego?${qs}`);
  }

  rankings(measure: string, offset = 0, limit = 20) {
    const qs = new URLSearchParams({ offset: String(offset), limit: String(limit) });
    return this.request<RankingsResponse>("GET", `/rankings/${measure}?${qs}`);
  }

  recommend(payload: PreferencePayload) {
    return this.request<RecommendResponse>("POST", "/recommend/advisor", payload);
  }

  health() {
    return this.request<Record<string, unknown>>("GET", "/healthz");
  }
}
