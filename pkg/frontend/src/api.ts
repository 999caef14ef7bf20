// Typed client for the newsmill JSON API. Every view renders exclusively
// from these responses; nothing is fabricated client-side.

export interface ClusterSummary {
  cluster_id: string;
  language: string;
  date: string;
  cohesiveness: number;
  title: string;
  size: number;
}

export interface Member {
  doc_id: string;
  title: string;
  url: string;
  source: string;
  published_at: string;
}

export interface LinkedCluster {
  cluster_id: string;
  language: string;
  date: string;
  title: string;
  score: number;
}

export interface Place {
  entry_id: number;
  name: string;
  lat: number;
  lon: number;
  count: number;
}

export interface ClusterPage {
  cluster_id: string;
  language: string;
  date: string;
  cohesiveness: number;
  title: string;
  title_doc_id: string;
  members: Member[];
  keywords: { keyword: string; weight: number }[];
  entities: { name: string; kind: string; count: number; entity_id: number | null }[];
  term_hits: { term: string; frequency: number }[];
  places: Place[];
  countries: { iso: string; weight: number }[];
  descriptors: { descriptor_id: string; weight: number }[];
  links: { temporal: LinkedCluster[]; crosslingual: LinkedCluster[] };
}

export interface EntityPage {
  entity_id: number;
  canonical: string;
  variants: { variant: string; count: number }[];
  titles: Record<string, { title: string; count: number }[]>;
  clusters: { cluster_id: string; language: string; date: string; title: string }[];
  keywords: { keyword: string; weight: number }[];
  countries: { iso: string; weight: number }[];
  associations: {
    entity_id: number;
    name: string;
    co_cluster_count: number;
    weight: number;
  }[];
}

export interface SearchResult {
  query: string;
  entities: {
    entity_id: number;
    canonical: string;
    matched_variant: string;
    similarity: number;
    fuzzy: boolean;
  }[];
  keywords: { keyword: string; language: string }[];
  countries: { iso: string }[];
}

export interface PivotResult {
  type: string;
  key: string;
  lang: string | null;
  clusters: { cluster_id: string; language: string; date: string; title: string }[];
}

export interface Stats {
  documents: number;
  clusters: number;
  entities: number;
  links: number;
  relation_edges: number;
  languages: string[];
  dates: string[];
  settings: Record<string, unknown>;
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

let baseUrl = "";

/** Point the client somewhere other than the serving origin (tests, dev). */
export function setApiBase(url: string): void {
  baseUrl = url.replace(/\/$/, "");
}

async function getJson<T>(path: string): Promise<T> {
  let response: Response;
  try {
    response = await fetch(baseUrl + path, { headers: { Accept: "application/json" } });
  } catch (err) {
    throw new ApiError(0, `network error: ${String(err)}`);
  }
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      // keep statusText
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export function fetchClusters(
  date?: string,
  lang?: string,
  limit = 200,
): Promise<{ clusters: ClusterSummary[] }> {
  const params = new URLSearchParams();
  if (date) params.set("date", date);
  if (lang) params.set("lang", lang);
  params.set("limit", String(limit));
  return getJson(`/clusters?${params}`);
}

export function fetchClusterPage(clusterId: string): Promise<ClusterPage> {
  return getJson(`/clusters/${encodeURIComponent(clusterId)}`);
}

export function fetchEntityPage(entityId: number | string): Promise<EntityPage> {
  return getJson(`/entities/${encodeURIComponent(String(entityId))}`);
}

export function fetchSearch(query: string): Promise<SearchResult> {
  return getJson(`/search?q=${encodeURIComponent(query)}`);
}

export function fetchPivot(
  type: "keyword" | "place" | "country",
  key: string,
  lang?: string,
): Promise<PivotResult> {
  const params = new URLSearchParams({ type, key });
  if (lang) params.set("lang", lang);
  return getJson(`/pivot?${params}`);
}

export function fetchStats(): Promise<Stats> {
  return getJson("/stats");
}
