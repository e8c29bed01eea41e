// Single-page app over the scholargraph API. The URL hash is the only
// source of view state: navigation writes the hash, the hash-change
// handler re-renders, and a deep link replays the same API calls.

import {
  ApiClient,
  ApiError,
  STALE,
  type EgoDoc,
  type Profile,
  type QueryResponse,
  type RecommendResponse,
} from "./api";
import { renderEgo } from "./ego";
import { renderGeo } from "./geo";
import { renderSeries } from "./series";
import {
  MEASURES,
  RELATION_VIEWS,
  decodeState,
  defaultState,
  encodeState,
  type RelationView,
  type ViewState,
} from "./state";

const MEASURE_LABELS: Record<string, string> = {
  collaborators: "Collaborators",
  advisees: "Advisees",
  team_members: "Team members",
  advisor_influence: "Advisor influence",
  citations: "Citations",
  potential_index: "Potential index",
};

const VIEW_LABELS: Record<RelationView, string> = {
  coauthor: "Co-authors",
  advisor: "Advisor / advisees",
  cites: "Citations",
  cocited: "Co-cited",
  team: "Team",
  geo: "Geography",
  series: "Activity over time",
};

function h<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) {
    if (k === "class") node.className = v;
    else node.setAttribute(k, v);
  }
  for (const child of children) node.append(child);
  return node;
}

export class App {
  readonly api: ApiClient;
  readonly root: HTMLElement;
  state: ViewState = defaultState();
  private readonly onHashChange = () => void this.route();

  constructor(root: HTMLElement, api: ApiClient = new ApiClient()) {
    this.root = root;
    this.api = api;
    window.addEventListener("hashchange", this.onHashChange);
  }

  start(): Promise<void> {
    return this.route();
  }

  dispose(): void {
    window.removeEventListener("hashchange", this.onHashChange);
  }

  navigate(state: ViewState): void {
    const target = encodeState(state);
    if (location.hash === target) {
      this.state = state;
      void this.route();
    } else {
      location.hash = target; // hashchange listener re-routes
    }
  }

  async route(): Promise<void> {
    this.state = decodeState(location.hash);
    this.root.textContent = "";
    this.root.appendChild(this.renderNav());
    const main = h("main", { class: "panel" });
    this.root.appendChild(main);
    switch (this.state.page) {
      case "search":
        return this.renderSearch(main);
      case "scholar":
        return this.renderScholar(main);
      case "rankings":
        return this.renderRankings(main);
      case "recommend":
        return this.renderRecommend(main);
    }
  }

  private renderNav(): HTMLElement {
    const links: [string, ViewState["page"], string][] = [
      ["Search", "search", "#/search"],
      ["Rankings", "rankings", "#/rankings/collaborators"],
      ["Find an advisor", "recommend", "#/recommend"],
    ];
    const nav = h("nav", { class: "topnav" }, h("span", { class: "brand" }, "scholargraph"));
    for (const [label, page, href] of links) {
      nav.appendChild(
        h("a", { href, class: this.state.page === page ? "active" : "" }, label),
      );
    }
    return nav;
  }

  private errorBanner(err: unknown): HTMLElement {
    const message =
      err instanceof ApiError ? `${err.body.kind}: ${err.body.message}` : String(err);
    return h("div", { class: "error-banner", role: "alert" }, message);
  }

  // --- search ------------------------------------------------------------

  private async renderSearch(main: HTMLElement): Promise<void> {
    const box = h("input", {
      class: "searchbox",
      type: "search",
      placeholder: "Name fragment, or: Bob's advisor / advisees of Alice",
      value: this.state.q,
      "aria-label": "search scholars",
    });
    const resultsPanel = h("div", { class: "results" });
    box.addEventListener("input", () => {
      const next = { ...this.state, q: box.value };
      // update the hash without re-rendering the input (focus survives)
      this.state = next;
      history.replaceState(null, "", encodeState(next) || "#/search");
      void this.loadSearch(resultsPanel);
    });
    main.appendChild(h("h1", {}, "Scholar search"));
    main.appendChild(box);
    main.appendChild(resultsPanel);
    await this.loadSearch(resultsPanel);
  }

  private async loadSearch(panel: HTMLElement): Promise<void> {
    const q = this.state.q.trim();
    if (!q) {
      panel.textContent = "";
      panel.appendChild(
        h("p", { class: "hint" }, "Type to search. Relation queries resolve scholars: try “Bob's advisor”."),
      );
      return;
    }
    let body: QueryResponse;
    try {
      const result = await this.api.search(q);
      if (result === STALE) return; // superseded by newer keystrokes
      body = result;
    } catch (err) {
      panel.textContent = "";
      panel.appendChild(this.errorBanner(err));
      return;
    }
    panel.textContent = "";
    if (body.query.kind === "relation_query") {
      const subject = body.resolved
        ? `${body.resolved.name}'s ${body.query.relation}`
        : `${body.query.name}'s ${body.query.relation}`;
      panel.appendChild(h("p", { class: "query-echo" }, `Relation query: ${subject}`));
    }
    if (body.status === "no_match") {
      panel.appendChild(h("p", { class: "empty-state" }, "No matching scholars."));
      return;
    }
    if (body.status === "no_relation") {
      panel.appendChild(h("p", { class: "empty-state" }, "No such relationship recorded."));
      return;
    }
    if (body.status === "ambiguous") {
      panel.appendChild(h("p", { class: "hint" }, "Several scholars match; pick one:"));
    }
    const list = h("ul", { class: "scholar-list" });
    for (const hit of body.results) {
      const link = h(
        "a",
        { href: `#/scholar/${encodeURIComponent(hit.id)}`, class: "scholar-link" },
        h("strong", {}, hit.name),
        h("span", { class: "inst" }, hit.inst ? ` · ${hit.inst}` : ""),
      );
      list.appendChild(h("li", { "data-id": hit.id }, link));
    }
    panel.appendChild(list);
  }

  // --- scholar profile + relationship views -------------------------------

  private async renderScholar(main: HTMLElement): Promise<void> {
    const header = h("div", { class: "profile-header" });
    const tabs = h("div", { class: "tabs" });
    const viewPanel = h("div", { class: "view-panel" });
    main.append(header, tabs, viewPanel);

    for (const view of RELATION_VIEWS) {
      const tab = h(
        "a",
        {
          href: encodeState({ ...this.state, view }),
          class: `tab ${view === this.state.view ? "active" : ""}`,
          "data-view": view,
        },
        VIEW_LABELS[view],
      );
      tabs.appendChild(tab);
    }

    const profilePromise = this.loadProfile(header);
    const kind = this.state.view === "geo" || this.state.view === "series" ? "coauthor" : this.state.view;
    const opts = { geo: this.state.view === "geo", series: this.state.view === "series" };
    const egoPromise = this.loadEgo(viewPanel, kind, opts);
    await Promise.all([profilePromise, egoPromise]);
  }

  private async loadProfile(panel: HTMLElement): Promise<void> {
    let profile: Profile;
    try {
      profile = await this.api.profile(this.state.scholar);
    } catch (err) {
      panel.appendChild(this.errorBanner(err));
      return;
    }
    panel.textContent = "";
    panel.appendChild(
      h(
        "h1",
        {},
        profile.name,
        h("span", { class: "inst" }, profile.inst ? ` · ${profile.inst}` : ""),
      ),
    );
    panel.appendChild(
      h(
        "p",
        { class: "profile-meta" },
        `First publication ${profile.first_pub_year} · ${profile.pub_ids.length} publication(s)` +
          (profile.fields.length ? ` · fields: ${profile.fields.join(", ")}` : ""),
      ),
    );
    const table = h("table", { class: "measures" });
    const headRow = h("tr", {});
    const valueRow = h("tr", {});
    for (const measure of MEASURES) {
      headRow.appendChild(h("th", {}, MEASURE_LABELS[measure]));
      const value = profile.measures[measure];
      valueRow.appendChild(
        h("td", { "data-measure": measure }, measure === "potential_index" ? value.toFixed(3) : String(value)),
      );
    }
    table.append(headRow, valueRow);
    panel.appendChild(table);
  }

  private async loadEgo(
    panel: HTMLElement,
    kind: string,
    opts: { geo?: boolean; series?: boolean },
  ): Promise<void> {
    let doc: EgoDoc;
    try {
      const result = await this.api.ego(this.state.scholar, kind, opts);
      if (result === STALE) return;
      doc = result;
    } catch (err) {
      panel.textContent = "";
      panel.appendChild(this.errorBanner(err));
      return;
    }
    panel.textContent = "";
    if (this.state.view === "geo") {
      renderGeo(panel, doc);
    } else if (this.state.view === "series") {
      renderSeries(panel, doc);
    } else {
      renderEgo(panel, doc, (id) =>
        this.navigate({ ...this.state, page: "scholar", scholar: id }),
      );
    }
  }

  // --- rankings ------------------------------------------------------------

  private async renderRankings(main: HTMLElement): Promise<void> {
    main.appendChild(h("h1", {}, "Academic rankings"));
    const tabs = h("div", { class: "tabs" });
    for (const measure of MEASURES) {
      tabs.appendChild(
        h(
          "a",
          {
            href: encodeState({ ...this.state, measure, offset: 0 }),
            class: `tab ${measure === this.state.measure ? "active" : ""}`,
            "data-measure": measure,
          },
          MEASURE_LABELS[measure],
        ),
      );
    }
    main.appendChild(tabs);
    const panel = h("div", { class: "ranking-panel" });
    main.appendChild(panel);

    const limit = 20;
    try {
      const body = await this.api.rankings(this.state.measure, this.state.offset, limit);
      const table = h("table", { class: "ranking-table" });
      table.appendChild(h("tr", {}, h("th", {}, "#"), h("th", {}, "Scholar"), h("th", {}, "Value")));
      body.entries.forEach((entry, i) => {
        table.appendChild(
          h(
            "tr",
            { "data-id": entry.id },
            h("td", {}, String(body.offset + i + 1)),
            h(
              "td",
              {},
              h("a", { href: `#/scholar/${encodeURIComponent(entry.id)}` }, entry.name),
            ),
            h(
              "td",
              { class: "value" },
              this.state.measure === "potential_index" ? entry.value.toFixed(3) : String(entry.value),
            ),
          ),
        );
      });
      panel.appendChild(table);
      const pager = h("div", { class: "pager" });
      if (body.offset > 0) {
        pager.appendChild(
          h(
            "a",
            { href: encodeState({ ...this.state, offset: Math.max(0, body.offset - limit) }) },
            "← previous",
          ),
        );
      }
      if (body.offset + body.entries.length < body.total) {
        pager.appendChild(
          h("a", { href: encodeState({ ...this.state, offset: body.offset + limit }) }, "next →"),
        );
      }
      panel.appendChild(pager);
      if (body.entries.length === 0) {
        panel.appendChild(h("p", { class: "empty-state" }, "No scholars with a positive value."));
      }
    } catch (err) {
      panel.appendChild(this.errorBanner(err));
    }
  }

  // --- advisor recommendation ---------------------------------------------

  private async renderRecommend(main: HTMLElement): Promise<void> {
    main.appendChild(h("h1", {}, "Find an advisor"));
    const form = h("form", { class: "pref-form" });
    const fields = h("input", {
      name: "fields",
      value: this.state.form.field_tags,
      placeholder: "field tags, comma-separated",
    });
    const minAdvisees = h("input", {
      name: "min_advisees",
      type: "number",
      min: "0",
      value: String(this.state.form.min_advisees),
    });
    const minCitations = h("input", {
      name: "min_citations",
      type: "number",
      min: "0",
      value: String(this.state.form.min_citations),
    });
    const institution = h("input", {
      name: "institution",
      value: this.state.form.institution,
      placeholder: "institution (exact)",
    });
    form.append(
      h("label", {}, "Fields ", fields),
      h("label", {}, "Min advisees ", minAdvisees),
      h("label", {}, "Min citations ", minCitations),
      h("label", {}, "Institution ", institution),
      h("button", { type: "submit" }, "Recommend"),
    );
    const resultsPanel = h("div", { class: "recommendations" });
    main.append(form, resultsPanel);

    form.addEventListener("submit", (event) => {
      event.preventDefault(); // re-submit without a page reload
      const next: ViewState = {
        ...this.state,
        form: {
          field_tags: fields.value.trim(),
          min_advisees: parseInt(minAdvisees.value, 10) || 0,
          min_citations: parseInt(minCitations.value, 10) || 0,
          institution: institution.value.trim(),
          submitted: true,
        },
      };
      this.state = next;
      history.replaceState(null, "", encodeState(next));
      void this.loadRecommendations(resultsPanel);
    });

    if (this.state.form.submitted) {
      await this.loadRecommendations(resultsPanel);
    }
  }

  private async loadRecommendations(panel: HTMLElement): Promise<void> {
    const draft = this.state.form;
    let body: RecommendResponse;
    try {
      body = await this.api.recommend({
        field_tags: draft.field_tags
          ? draft.field_tags.split(",").map((t) => t.trim()).filter(Boolean)
          : [],
        min_advisees: draft.min_advisees,
        min_citations: draft.min_citations,
        institution: draft.institution || null,
        limit: 10,
      });
    } catch (err) {
      // form inputs stay as typed; only the results panel changes
      panel.textContent = "";
      panel.appendChild(this.errorBanner(err));
      return;
    }
    panel.textContent = "";
    if (body.recommendations.length === 0) {
      panel.appendChild(
        h("p", { class: "empty-state" }, "No advisors match these preferences."),
      );
      return;
    }
    for (const rec of body.recommendations) {
      const card = h("div", { class: "rec-card", "data-id": rec.id });
      card.appendChild(
        h(
          "div",
          { class: "rec-head" },
          h("strong", {}, rec.name),
          h("span", { class: "score" }, ` match ${(rec.score * 100).toFixed(0)}%`),
        ),
      );
      const reasons = h("ul", { class: "reasons" });
      for (const reason of rec.reasons) {
        reasons.appendChild(h("li", {}, reason)); // verbatim from the API
      }
      card.appendChild(reasons);
      const preview = h("p", { class: "preview" });
      const advisees = rec.ego_preview.advisees.map((a) => a.name).join(", ");
      const coauthors = rec.ego_preview.coauthors.map((c) => `${c.name} (${c.weight})`).join(", ");
      preview.append(
        advisees ? `Advisees: ${advisees}. ` : "",
        coauthors ? `Co-authors: ${coauthors}.` : "",
      );
      card.appendChild(preview);
      card.appendChild(
        h(
          "a",
          { href: `#/scholar/${encodeURIComponent(rec.id)}`, class: "rec-link" },
          "View relationship network →",
        ),
      );
      panel.appendChild(card);
    }
  }
}
