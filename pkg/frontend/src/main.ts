import "./style.css";
import { clear, el } from "./dom";
import { Route, currentRoute, hashFor, navigate, onRouteChange } from "./router";
import {
  errorState, renderAbout, renderClusterList, renderClusterPage,
  renderEntityPage, renderPivot, renderSearchResults,
} from "./views";

const SEARCH_DEBOUNCE_MS = 250;

async function viewFor(route: Route): Promise<HTMLElement> {
  switch (route.kind) {
    case "cluster-list":
      return renderClusterList(route.date, route.lang);
    case "cluster":
      return renderClusterPage(route.id);
    case "entity":
      return renderEntityPage(route.id);
    case "pivot":
      return renderPivot(route.type, route.key, route.lang);
    case "search":
      return renderSearchResults(route.q);
    case "about":
      return renderAbout();
  }
}

// renders must match the latest completed fetch for the current route
let renderGeneration = 0;

export async function renderRoute(route: Route, outlet: HTMLElement): Promise<void> {
  const generation = ++renderGeneration;
  try {
    const view = await viewFor(route);
    if (generation !== renderGeneration) return;
    clear(outlet);
    outlet.appendChild(view);
  } catch (error) {
    if (generation !== renderGeneration) return;
    clear(outlet);
    outlet.appendChild(errorState(error, () => void renderRoute(route, outlet)));
  }
  try {
    window.scrollTo(0, 0);
  } catch {
    // test environments without layout
  }
}

export function buildShell(root: HTMLElement): HTMLElement {
  const searchInput = el("input", {
    class: "search-input",
    type: "search",
    placeholder: "name, keyword or country…",
    "aria-label": "search",
  }) as HTMLInputElement;

  let timer: number | undefined;
  searchInput.addEventListener("input", () => {
    window.clearTimeout(timer);
    const q = searchInput.value;
    if (!q.trim()) return;                   // empty query issues no call
    timer = window.setTimeout(() => navigate({ kind: "search", q }), SEARCH_DEBOUNCE_MS);
  });
  searchInput.addEventListener("keydown", (event) => {
    if (event.key === "Enter" && searchInput.value.trim()) {
      window.clearTimeout(timer);
      navigate({ kind: "search", q: searchInput.value });
    }
  });

  const outlet = el("main", { class: "outlet", id: "outlet" });
  root.append(
    el("header", { class: "app-header" }, [
      el("a", { href: hashFor({ kind: "cluster-list" }), class: "brand" }, ["newsmill explorer"]),
      searchInput,
      el("nav", {}, [
        el("a", { href: hashFor({ kind: "cluster-list" }) }, ["clusters"]),
        el("a", { href: hashFor({ kind: "about" }) }, ["about"]),
      ]),
    ]),
    outlet,
  );
  return outlet;
}

export function start(root: HTMLElement): void {
  const outlet = buildShell(root);
  onRouteChange((route) => void renderRoute(route, outlet));
  void renderRoute(currentRoute(), outlet);
}

const rootElement = document.getElementById("app");
if (rootElement) {
  start(rootElement);
}
