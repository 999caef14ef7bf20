// Route renderers. Every view builds its DOM from one or more API
// responses and returns a detached element for main.ts to mount.

import {
  ApiError, ClusterPage, ClusterSummary, EntityPage, PivotResult,
  SearchResult, Stats,
  fetchClusterPage, fetchClusters, fetchEntityPage, fetchPivot, fetchSearch,
  fetchStats,
} from "./api";
import { clear, el, formatScore } from "./dom";
import { renderPlaceMap } from "./map";
import { Route, hashFor, navigate } from "./router";

function routeLink(route: Route, text: string, cssClass = ""): HTMLAnchorElement {
  return el("a", { href: hashFor(route), class: cssClass }, [text]);
}

export function errorState(error: unknown, retry: () => void): HTMLElement {
  const message =
    error instanceof ApiError
      ? error.status === 404
        ? `Nothing here: ${error.message}`
        : `The collection service answered ${error.status || "not at all"}: ${error.message}`
      : String(error);
  const button = el("button", { class: "retry" }, ["Retry"]);
  button.addEventListener("click", retry);
  return el("div", { class: "error-state" }, [
    el("p", {}, [message]),
    button,
  ]);
}

function emptyState(message: string): HTMLElement {
  return el("div", { class: "empty-state" }, [message]);
}

function sectionTitle(text: string): HTMLElement {
  return el("h2", {}, [text]);
}

function clusterRow(c: { cluster_id: string; language: string; date: string; title: string }): HTMLElement {
  return el("li", { class: "cluster-row" }, [
    el("span", { class: "tag lang-tag" }, [c.language]),
    el("span", { class: "tag date-tag" }, [c.date]),
    routeLink({ kind: "cluster", id: c.cluster_id }, c.title, "cluster-link"),
  ]);
}

// ---- cluster list ----------------------------------------------------------

export async function renderClusterList(date?: string, lang?: string): Promise<HTMLElement> {
  const [stats, listing] = await Promise.all([fetchStats(), fetchClusters(date, lang)]);
  const effectiveDate = date ?? stats.dates[stats.dates.length - 1];
  const rows = date ? listing.clusters : listing.clusters.filter((c) => c.date === effectiveDate);

  const dateSelect = el("select", { class: "date-select" });
  for (const d of stats.dates) {
    const option = el("option", { value: d }, [d]);
    if (d === effectiveDate) option.setAttribute("selected", "selected");
    dateSelect.appendChild(option);
  }
  const langSelect = el("select", { class: "lang-select" });
  langSelect.appendChild(el("option", { value: "" }, ["all languages"]));
  for (const l of stats.languages) {
    const option = el("option", { value: l }, [l]);
    if (l === lang) option.setAttribute("selected", "selected");
    langSelect.appendChild(option);
  }
  const reload = () =>
    navigate({
      kind: "cluster-list",
      date: (dateSelect as HTMLSelectElement).value,
      lang: (langSelect as HTMLSelectElement).value || undefined,
    });
  dateSelect.addEventListener("change", reload);
  langSelect.addEventListener("change", reload);

  const byLanguage = new Map<string, ClusterSummary[]>();
  for (const c of rows) {
    const bucket = byLanguage.get(c.language) ?? [];
    bucket.push(c);
    byLanguage.set(c.language, bucket);
  }

  const groups: HTMLElement[] = [];
  for (const [language, clusters] of [...byLanguage.entries()].sort()) {
    groups.push(
      el("section", { class: "lang-group" }, [
        sectionTitle(`${language} - ${clusters.length} cluster${clusters.length === 1 ? "" : "s"}`),
        el("ul", { class: "cluster-list" },
          clusters.map((c) =>
            el("li", { class: "cluster-row" }, [
              el("span", { class: "tag size-tag", title: "documents in cluster" }, [`${c.size} docs`]),
              el("span", { class: "tag coh-tag", title: "cohesiveness" }, [formatScore(c.cohesiveness)]),
              routeLink({ kind: "cluster", id: c.cluster_id }, c.title, "cluster-link"),
            ]),
          )),
      ]),
    );
  }

  return el("div", { class: "view view-cluster-list" }, [
    el("div", { class: "toolbar" }, [
      el("label", {}, ["day ", dateSelect]),
      el("label", {}, ["language ", langSelect]),
    ]),
    ...(groups.length ? groups : [emptyState("No clusters for this selection.")]),
  ]);
}

// ---- cluster page ----------------------------------------------------------

function chipList(items: HTMLElement[], cssClass: string): HTMLElement {
  return el("div", { class: `chips ${cssClass}` }, items);
}

export async function renderClusterPage(clusterId: string): Promise<HTMLElement> {
  const page: ClusterPage = await fetchClusterPage(clusterId);

  const members = el("ul", { class: "member-list" },
    page.members.map((m) =>
      el("li", {}, [
        el("a", { href: m.url, class: "member-title", target: "_blank", rel: "noopener" }, [m.title]),
        el("span", { class: "member-source" }, [` ${m.source} - ${m.published_at.slice(0, 10)}`]),
      ]),
    ));

  const entityChips = page.entities.map((entity) => {
    const chip =
      entity.entity_id !== null
        ? routeLink({ kind: "entity", id: String(entity.entity_id) }, `${entity.name} (${entity.count})`, `chip entity-chip kind-${entity.kind}`)
        : el("span", { class: `chip entity-chip kind-${entity.kind}` }, [`${entity.name} (${entity.count})`]);
    return chip;
  });

  const keywordChips = page.keywords.map((k) =>
    routeLink(
      { kind: "pivot", type: "keyword", key: k.keyword, lang: page.language },
      k.keyword,
      "chip keyword-chip",
    ));

  const countryChips = page.countries.map((c) =>
    routeLink({ kind: "pivot", type: "country", key: c.iso }, c.iso, "chip country-chip"));

  const placeChips = page.places.map((p) =>
    routeLink(
      { kind: "pivot", type: "place", key: String(p.entry_id) },
      `${p.name || p.entry_id} (${p.count})`,
      "chip place-chip",
    ));

  const termRows = page.term_hits.map((t) =>
    el("tr", {}, [el("td", {}, [t.term]), el("td", { class: "num" }, [String(t.frequency)])]));

  const crosslingualChips = page.links.crosslingual.map((link) =>
    routeLink(
      { kind: "cluster", id: link.cluster_id },
      `${link.language} ${formatScore(link.score)}`,
      "chip link-chip crosslingual-chip",
    ));
  const temporalChips = page.links.temporal.map((link) =>
    routeLink(
      { kind: "cluster", id: link.cluster_id },
      `${link.date} ${formatScore(link.score)}`,
      "chip link-chip temporal-chip",
    ));

  const sections: HTMLElement[] = [
    el("header", { class: "page-head" }, [
      el("h1", {}, [page.title]),
      el("p", { class: "meta" }, [
        `${page.language} - ${page.date} - ${page.members.length} articles - cohesiveness ${formatScore(page.cohesiveness)}`,
      ]),
    ]),
    sectionTitle("Articles"),
    members,
  ];

  if (crosslingualChips.length || temporalChips.length) {
    sections.push(sectionTitle("Related clusters"));
    if (crosslingualChips.length) {
      sections.push(el("p", { class: "link-row" }, ["Other languages: "]), chipList(crosslingualChips, "crosslingual-links"));
    }
    if (temporalChips.length) {
      sections.push(el("p", { class: "link-row" }, ["Previous days: "]), chipList(temporalChips, "temporal-links"));
    }
  }

  if (entityChips.length) {
    sections.push(sectionTitle("People and organisations"), chipList(entityChips, "entity-chips"));
  }
  if (keywordChips.length) {
    sections.push(sectionTitle("Keywords"), chipList(keywordChips, "keyword-chips"));
  }
  if (countryChips.length) {
    sections.push(sectionTitle("Countries"), chipList(countryChips, "country-chips"));
  }
  if (page.term_hits.length) {
    sections.push(
      sectionTitle("Specialist terms"),
      el("table", { class: "term-table" }, [
        el("thead", {}, [el("tr", {}, [el("th", {}, ["TERM"]), el("th", {}, ["FREQUENCY"])])]),
        el("tbody", {}, termRows),
      ]),
    );
  }
  if (page.places.length) {
    sections.push(
      sectionTitle("Places"),
      renderPlaceMap(page.places, (place) =>
        navigate({ kind: "pivot", type: "place", key: String(place.entry_id) })),
      chipList(placeChips, "place-chips"),
    );
  }

  return el("div", { class: "view view-cluster" }, sections);
}

// ---- entity page -----------------------------------------------------------

export async function renderEntityPage(entityId: string): Promise<HTMLElement> {
  let page: EntityPage;
  try {
    page = await fetchEntityPage(entityId);
  } catch (error) {
    if (error instanceof ApiError && error.status === 404) {
      return el("div", { class: "view view-entity" }, [
        emptyState(`No entity ${entityId} in this collection.`),
      ]);
    }
    throw error;
  }

  const variantChips = page.variants.map((v) =>
    el("span", { class: "chip variant-chip" }, [`${v.variant} (${v.count})`]));

  const titleRows: HTMLElement[] = [];
  for (const language of Object.keys(page.titles).sort()) {
    for (const t of page.titles[language]) {
      titleRows.push(el("li", {}, [
        el("span", { class: "tag lang-tag" }, [language]),
        `${t.title} (${t.count})`,
      ]));
    }
  }

  const associationTable = page.associations.length
    ? el("table", { class: "association-table" }, [
        el("thead", {}, [el("tr", {}, [
          el("th", {}, ["NAME"]),
          el("th", {}, ["COMM-CLUST"]),
          el("th", {}, ["WGHT"]),
        ])]),
        el("tbody", {},
          page.associations.map((a) =>
            el("tr", {}, [
              el("td", {}, [routeLink({ kind: "entity", id: String(a.entity_id) }, a.name, "assoc-link")]),
              el("td", { class: "num" }, [String(a.co_cluster_count)]),
              el("td", { class: "num" }, [a.weight.toFixed(2)]),
            ]),
          )),
      ])
    : emptyState("No co-occurring names recorded yet.");

  const keywordChips = page.keywords.map((k) =>
    el("span", { class: "chip keyword-chip" }, [k.keyword]));
  const countryChips = page.countries.map((c) =>
    routeLink({ kind: "pivot", type: "country", key: c.iso }, c.iso, "chip country-chip"));

  return el("div", { class: "view view-entity" }, [
    el("header", { class: "page-head" }, [
      el("h1", {}, [page.canonical]),
      el("p", { class: "meta" }, [`entity ${page.entity_id}`]),
    ]),
    sectionTitle("Name variants"),
    chipList(variantChips, "variant-chips"),
    sectionTitle("Titles"),
    titleRows.length ? el("ul", { class: "title-list" }, titleRows) : emptyState("No titles captured."),
    sectionTitle("Related keywords"),
    keywordChips.length ? chipList(keywordChips, "keyword-chips") : emptyState("None yet."),
    sectionTitle("Related countries"),
    countryChips.length ? chipList(countryChips, "country-chips") : emptyState("None yet."),
    sectionTitle("Weighted associated names"),
    associationTable,
    sectionTitle("Latest clusters"),
    page.clusters.length
      ? el("ul", { class: "cluster-list" }, page.clusters.map(clusterRow))
      : emptyState("Not mentioned in any cluster."),
  ]);
}

// ---- pivot -----------------------------------------------------------------

export async function renderPivot(
  type: "keyword" | "place" | "country",
  key: string,
  lang?: string,
): Promise<HTMLElement> {
  const result: PivotResult = await fetchPivot(type, key, lang);
  const label =
    type === "keyword" ? `keyword "${key}" in ${lang}` :
    type === "place" ? `place ${key}` : `country ${key.toUpperCase()}`;
  return el("div", { class: "view view-pivot" }, [
    el("header", { class: "page-head" }, [
      el("h1", {}, [`Clusters for ${label}`]),
      el("p", { class: "meta" }, [
        type === "keyword"
          ? "keywords are language-bound, so every match is in the same language"
          : "place and country identifiers are language-independent, so matches span languages",
      ]),
    ]),
    result.clusters.length
      ? el("ul", { class: "cluster-list" }, result.clusters.map(clusterRow))
      : emptyState("No clusters carry this key."),
  ]);
}

// ---- search ----------------------------------------------------------------

export async function renderSearchResults(query: string): Promise<HTMLElement> {
  if (!query.trim()) {
    return el("div", { class: "view view-search" }, [emptyState("Type a name, keyword or country.")]);
  }
  const result: SearchResult = await fetchSearch(query);
  const parts: HTMLElement[] = [
    el("header", { class: "page-head" }, [el("h1", {}, [`Search: ${query}`])]),
  ];

  if (result.entities.length) {
    parts.push(sectionTitle("Names"));
    parts.push(el("ul", { class: "search-results" },
      result.entities.map((entity) =>
        el("li", { class: entity.fuzzy ? "search-hit fuzzy" : "search-hit exact" }, [
          routeLink({ kind: "entity", id: String(entity.entity_id) }, entity.canonical, "entity-link"),
          entity.fuzzy
            ? el("span", { class: "fuzzy-flag", title: "approximate name match" }, [
                ` ~ approximate (${entity.matched_variant}, ${entity.similarity.toFixed(2)})`,
              ])
            : el("span", { class: "exact-flag" }, [" exact"]),
        ]),
      )));
  }
  if (result.keywords.length) {
    parts.push(sectionTitle("Keywords"));
    parts.push(chipList(
      result.keywords.map((k) =>
        routeLink({ kind: "pivot", type: "keyword", key: k.keyword, lang: k.language },
          `${k.keyword} (${k.language})`, "chip keyword-chip")),
      "keyword-chips",
    ));
  }
  if (result.countries.length) {
    parts.push(sectionTitle("Countries"));
    parts.push(chipList(
      result.countries.map((c) =>
        routeLink({ kind: "pivot", type: "country", key: c.iso }, c.iso, "chip country-chip")),
      "country-chips",
    ));
  }
  if (!result.entities.length && !result.keywords.length && !result.countries.length) {
    parts.push(emptyState("Nothing matches."));
  }
  return el("div", { class: "view view-search" }, parts);
}

// ---- about (stats panel) -----------------------------------------------------

export async function renderAbout(): Promise<HTMLElement> {
  const stats: Stats = await fetchStats();
  const settingRows = Object.entries(stats.settings).map(([key, value]) =>
    el("tr", {}, [el("td", {}, [key]), el("td", { class: "num" }, [JSON.stringify(value)])]));
  return el("div", { class: "view view-about" }, [
    el("header", { class: "page-head" }, [el("h1", {}, ["About this collection"])]),
    el("p", {}, [
      `${stats.documents} documents in ${stats.languages.join(", ")} across ` +
      `${stats.dates.length} day(s); ${stats.clusters} clusters, ${stats.entities} entities, ` +
      `${stats.links} links, ${stats.relation_edges} relation edges.`,
    ]),
    sectionTitle("Active thresholds and weights (read-only)"),
    el("table", { class: "settings-table" }, [el("tbody", {}, settingRows)]),
  ]);
}

export { clear };
