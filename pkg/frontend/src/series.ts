// Active-collaborator time series as a plain bar chart.

import type { EgoDoc } from "./api";

const SVG_NS = "http://www.w3.org/2000/svg";
const W = 640;
const H = 220;
const PAD = 28;

export function renderSeries(container: HTMLElement, doc: EgoDoc): void {
  container.textContent = "";
  const series = doc.series ?? {};
  const years = Object.keys(series).sort();
  if (years.length === 0) {
    const empty = document.createElement("div");
    empty.className = "empty-state";
    empty.textContent = "No collaborator activity in the window.";
    container.appendChild(empty);
    return;
  }
  const maxCount = Math.max(...years.map((y) => series[y]));
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${W} ${H}`);
  svg.setAttribute("class", "series-svg");

  const barW = Math.min(36, (W - 2 * PAD) / years.length - 4);
  years.forEach((year, i) => {
    const count = series[year];
    const h = count === 0 ? 0 : ((H - 2 * PAD) * count) / maxCount;
    const x = PAD + (i * (W - 2 * PAD)) / years.length;
    const bar = document.createElementNS(SVG_NS, "rect");
    bar.setAttribute("x", x.toFixed(1));
    bar.setAttribute("y", (H - PAD - h).toFixed(1));
    bar.setAttribute("width", barW.toFixed(1));
    bar.setAttribute("height", h.toFixed(1));
    bar.setAttribute("class", "series-bar");
    bar.dataset.year = year;
    bar.dataset.count = String(count);
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${year}: ${count} active collaborator(s)`;
    bar.appendChild(title);
    svg.appendChild(bar);

    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", (x + barW / 2).toFixed(1));
    label.setAttribute("y", String(H - PAD + 14));
    label.setAttribute("class", "series-label");
    label.setAttribute("text-anchor", "middle");
    label.textContent = year;
    svg.appendChild(label);
  });
  container.appendChild(svg);
}
