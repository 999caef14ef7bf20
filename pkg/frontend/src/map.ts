// Equirectangular point map of a cluster's places. Points only, no pan
// or zoom; hovering a point shows the place name and occurrence count.

import { Place } from "./api";
import { el } from "./dom";

const WIDTH = 720;
const HEIGHT = 360;
const SVG_NS = "http://www.w3.org/2000/svg";

function project(lon: number, lat: number): [number, number] {
  const x = ((lon + 180) / 360) * WIDTH;
  const y = ((90 - lat) / 180) * HEIGHT;
  return [x, y];
}

export function renderPlaceMap(places: Place[], onPick: (place: Place) => void): HTMLElement {
  const wrapper = el("div", { class: "place-map" });
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute("role", "img");
  svg.setAttribute("aria-label", "places mentioned in this cluster");

  const frame = document.createElementNS(SVG_NS, "rect");
  frame.setAttribute("x", "0");
  frame.setAttribute("y", "0");
  frame.setAttribute("width", String(WIDTH));
  frame.setAttribute("height", String(HEIGHT));
  frame.setAttribute("class", "map-sea");
  svg.appendChild(frame);

  // graticule every 30 degrees for orientation
  for (let lon = -150; lon <= 150; lon += 30) {
    const [x] = project(lon, 0);
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(x));
    line.setAttribute("x2", String(x));
    line.setAttribute("y1", "0");
    line.setAttribute("y2", String(HEIGHT));
    line.setAttribute("class", "map-grid");
    svg.appendChild(line);
  }
  for (let lat = -60; lat <= 60; lat += 30) {
    const [, y] = project(0, lat);
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", "0");
    line.setAttribute("x2", String(WIDTH));
    line.setAttribute("y1", String(y));
    line.setAttribute("y2", String(y));
    line.setAttribute("class", "map-grid");
    svg.appendChild(line);
  }

  const context = el("div", { class: "map-context" }, ["hover a point for context"]);
  const maxCount = Math.max(...places.map((p) => p.count), 1);

  for (const place of places) {
    const [x, y] = project(place.lon, place.lat);
    const dot = document.createElementNS(SVG_NS, "circle");
    dot.setAttribute("cx", String(x));
    dot.setAttribute("cy", String(y));
    dot.setAttribute("r", String(4 + 8 * (place.count / maxCount)));
    dot.setAttribute("class", "map-point");
    dot.setAttribute("data-entry-id", String(place.entry_id));
    const label = `${place.name || `place ${place.entry_id}`} - ${place.count} mention${place.count === 1 ? "" : "s"}`;
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = label;
    dot.appendChild(title);
    dot.addEventListener("mouseenter", () => {
      context.textContent = label;
    });
    dot.addEventListener("click", () => onPick(place));
    svg.appendChild(dot);
  }

  wrapper.append(svg, context);
  return wrapper;
}
