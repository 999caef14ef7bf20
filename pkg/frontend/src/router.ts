// Hash router. Deep links reproduce the same view and the browser's
// back/forward restores prior views for free.

export type Route =
  | { kind: "cluster-list"; date?: string; lang?: string }
  | { kind: "cluster"; id: string }
  | { kind: "entity"; id: string }
  | { kind: "pivot"; type: "keyword" | "place" | "country"; key: string; lang?: string }
  | { kind: "search"; q: string }
  | { kind: "about" };

export function parseHash(hash: string): Route {
  const raw = hash.replace(/^#\/?/, "");
  const [path, queryString] = raw.split("?", 2);
  const params = new URLSearchParams(queryString ?? "");
  const segments = path.split("/").filter(Boolean);

  if (segments[0] === "cluster" && segments[1]) {
    return { kind: "cluster", id: decodeURIComponent(segments[1]) };
  }
  if (segments[0] === "entity" && segments[1]) {
    return { kind: "entity", id: decodeURIComponent(segments[1]) };
  }
  if (segments[0] === "pivot") {
    const type = params.get("type");
    const key = params.get("key");
    if ((type === "keyword" || type === "place" || type === "country") && key) {
      return { kind: "pivot", type, key, lang: params.get("lang") ?? undefined };
    }
  }
  if (segments[0] === "search") {
    return { kind: "search", q: params.get("q") ?? "" };
  }
  if (segments[0] === "about") {
    return { kind: "about" };
  }
  return {
    kind: "cluster-list",
    date: params.get("date") ?? undefined,
    lang: params.get("lang") ?? undefined,
  };
}

export function hashFor(route: Route): string {
  switch (route.kind) {
    case "cluster":
      return `#/cluster/${encodeURIComponent(route.id)}`;
    case "entity":
      return `#/entity/${encodeURIComponent(route.id)}`;
    case "pivot": {
      const params = new URLSearchParams({ type: route.type, key: route.key });
      if (route.lang) params.set("lang", route.lang);
      return `#/pivot?${params}`;
    }
    case "search":
      return `#/search?q=${encodeURIComponent(route.q)}`;
    case "about":
      return "#/about";
    case "cluster-list": {
      const params = new URLSearchParams();
      if (route.date) params.set("date", route.date);
      if (route.lang) params.set("lang", route.lang);
      const qs = params.toString();
      return qs ? `#/clusters?${qs}` : "#/clusters";
    }
  }
}

export function navigate(route: Route): void {
  window.location.hash = hashFor(route);
}

export function currentRoute(): Route {
  return parseHash(window.location.hash);
}

export function onRouteChange(handler: (route: Route) => void): void {
  window.addEventListener("hashchange", () => handler(currentRoute()));
}
