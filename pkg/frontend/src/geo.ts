// Collaborator geography on an offline equirectangular projection: a
// graticule box, no map tiles, no external services.

import type { EgoDoc } from "./api";

const SVG_NS = "http://www.w3.org/2000/svg";
const W = 640;
const H = 320;

function project(lat: number, lng: number): { x: number; y: number } {
  return { x: ((lng + 180) / 360) * W, y: ((90 - lat) / 180) * H };
}

export function renderGeo(container: HTMLElement, doc: EgoDoc): void {
  container.textContent = "";
  const points = doc.geo ?? [];
  const names = new Map(doc.nodes.map((n) => [n.id, n.name]));

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${W} ${H}`);
  svg.setAttribute("class", "geo-svg");

  const frame = document.createElementNS(SVG_NS, "rect");
  frame.setAttribute("x", "0");
  frame.setAttribute("y", "0");
  frame.setAttribute("width", String(W));
  frame.setAttribute("height", String(H));
  frame.setAttribute("class", "geo-frame");
  svg.appendChild(frame);

  for (let lng = -150; lng <= 150; lng += 30) {
    const line = document.createElementNS(SVG_NS, "line");
    const x = project(0, lng).x;
    line.setAttribute("x1", String(x));
    line.setAttribute("x2", String(x));
    line.setAttribute("y1", "0");
    line.setAttribute("y2", String(H));
    line.setAttribute("class", "graticule");
    svg.appendChild(line);
  }
  for (let lat = -60; lat <= 60; lat += 30) {
    const line = document.createElementNS(SVG_NS, "line");
    const y = project(lat, 0).y;
    line.setAttribute("x1", "0");
    line.setAttribute("x2", String(W));
    line.setAttribute("y1", String(y));
    line.setAttribute("y2", String(y));
    line.setAttribute("class", "graticule");
    svg.appendChild(line);
  }

  for (const point of points) {
    const { x, y } = project(point.lat, point.lng);
    const dot = document.createElementNS(SVG_NS, "circle");
    dot.setAttribute("cx", x.toFixed(1));
    dot.setAttribute("cy", y.toFixed(1));
    dot.setAttribute("r", "5");
    dot.setAttribute("class", "geo-point");
    dot.dataset.id = point.id;
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${names.get(point.id) ?? point.id} (${point.lat.toFixed(2)}, ${point.lng.toFixed(2)})`;
    dot.appendChild(title);
    svg.appendChild(dot);
  }
  container.appendChild(svg);

  if (points.length === 0) {
    const empty = document.createElement("div");
    empty.className = "empty-state";
    empty.textContent = "No collaborator locations in the geo table.";
    container.appendChild(empty);
  }
}
