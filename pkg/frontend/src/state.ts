// ViewState <-> URL hash. Every view is fully described by the hash, so a
// deep link re-issues the same API calls and re-renders the same state.

export type RelationView =
  | "coauthor"
  | "advisor"
  | "cites"
  | "cocited"
  | "team"
  | "geo"
  | "series";

export const RELATION_VIEWS: RelationView[] = [
  "coauthor",
  "advisor",
  "cites",
  "cocited",
  "team",
  "geo",
  "series",
];

export const MEASURES = [
  "collaborators",
  "advisees",
  "team_members",
  "advisor_influence",
  "citations",
  "potential_index",
];

export interface FormDraft {
  field_tags: string;
  min_advisees: number;
  min_citations: number;
  institution: string;
  submitted: boolean;
}

export interface ViewState {
  page: "search" | "scholar" | "rankings" | "recommend";
  q: string;
  scholar: string;
  view: RelationView;
  measure: string;
  offset: number;
  form: FormDraft;
}

export function defaultState(): ViewState {
  return {
    page: "search",
    q: "",
    scholar: "",
    view: "coauthor",
    measure: "collaborators",
    offset: 0,
    form: { field_tags: "", min_advisees: 0, min_citations: 0, institution: "", submitted: false },
  };
}

export function encodeState(s: ViewState): string {
  const params = new URLSearchParams();
  switch (s.page) {
    case "search":
      if (s.q) params.set("q", s.q);
      return withQuery("#/search", params);
    case "scholar":
      if (s.view !== "coauthor") params.set("view", s.view);
      return withQuery(`#/scholar/${encodeURIComponent(s.scholar)}`, params);
    case "rankings":
      if (s.offset) params.set("offset", String(s.offset));
      return withQuery(`#/rankings/${s.measure}`, params);
    case "recommend":
      if (s.form.field_tags) params.set("fields", s.form.field_tags);
      if (s.form.min_advisees) params.set("min_advisees", String(s.form.min_advisees));
      if (s.form.min_citations) params.set("min_citations", String(s.form.min_citations));
      if (s.form.institution) params.set("inst", s.form.institution);
      if (s.form.submitted) params.set("go", "1");
      return withQuery("#/recommend", params);
  }
}

function withQuery(path: string, params: URLSearchParams): string {
  const qs = params.toString();
  return qs ? `${path}?${qs}` : path;
}

export function decodeState(hash: string): ViewState {
  const state = defaultState();
  const raw = hash.startsWith("#") ? hash.slice(1) : hash;
  const [path, query = ""] = raw.split("?", 2);
  const params = new URLSearchParams(query);
  const parts = path.split("/").filter(Boolean);

  if (parts[0] === "scholar" && parts[1]) {
    state.page = "scholar";
    state.scholar = decodeURIComponent(parts[1]);
    const view = params.get("view") ?? "coauthor";
    state.view = (RELATION_VIEWS as string[]).includes(view) ? (view as RelationView) : "coauthor";
  } else if (parts[0] === "rankings") {
    state.page = "rankings";
    state.measure = MEASURES.includes(parts[1] ?? "") ? parts[1] : "collaborators";
    state.offset = Math.max(0, parseInt(params.get("offset") ?? "0", 10) || 0);
  } else if (parts[0] === "recommend") {
    state.page = "recommend";
    state.form = {
      field_tags: params.get("fields") ?? "",
      min_advisees: Math.max(0, parseInt(params.get("min_advisees") ?? "0", 10) || 0),
      min_citations: Math.max(0, parseInt(params.get("min_citations") ?? "0", 10) || 0),
      institution: params.get("inst") ?? "",
      submitted: params.get("go") === "1",
    };
  } else {
    state.page = "search";
    state.q = params.get("q") ?? "";
  }
  return state;
}
