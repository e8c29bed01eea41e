// Ego-network renderer: force-laid SVG with weight-proportional stroke
// widths, tag-colored nodes, size hints, a legend, and hover titles.
// An invalid document renders an error panel and nothing else.

import type { EgoDoc } from "./api";
import { layoutForce } from "./force";
import { TAG_COLORS, TAG_LABELS, tagColor } from "./palette";

const SVG_NS = "http://www.w3.org/2000/svg";
export const EGO_WIDTH = 640;
export const EGO_HEIGHT = 440;

const VALID_TAGS = new Set(Object.keys(TAG_COLORS));

/** Structural check mirroring the published document schema. */
export function validateEgoDoc(doc: unknown): string | null {
  if (typeof doc !== "object" || doc === null) return "document is not an object";
  const d = doc as Record<string, unknown>;
  if (typeof d.center !== "string") return "missing center";
  if (typeof d.kind !== "string") return "missing kind";
  if (!Array.isArray(d.nodes)) return "missing nodes";
  if (!Array.isArray(d.links)) return "missing links";
  const ids = new Set<string>();
  for (const n of d.nodes as unknown[]) {
    const node = n as Record<string, unknown>;
    if (typeof node?.id !== "string" || typeof node?.name !== "string")
      return "node without id/name";
    if (typeof node.tag !== "string" || !VALID_TAGS.has(node.tag))
      return `node ${node.id}: unknown tag`;
    if (typeof node.size !== "number" || !(node.size > 0) || node.size > 1)
      return `node ${node.id}: size out of (0, 1]`;
    ids.add(node.id as string);
  }
  for (const l of d.links as unknown[]) {
    const link = l as Record<string, unknown>;
    if (typeof link?.src !== "string" || typeof link?.dst !== "string")
      return "link without endpoints";
    if (!ids.has(link.src as string) || !ids.has(link.dst as string))
      return `link ${link.src}->${link.dst}: endpoint not in nodes`;
    if (typeof link.weight !== "number" || !(link.weight > 0))
      return `link ${link.src}->${link.dst}: non-positive weight`;
  }
  return null;
}

export function strokeWidth(weight: number, maxWeight: number): number {
  return 1.5 + 4.5 * (weight / maxWeight);
}

export function nodeRadius(size: number): number {
  return 7 + 11 * size;
}

function el<K extends keyof SVGElementTagNameMap>(name: K, attrs: Record<string, string>) {
  const node = document.createElementNS(SVG_NS, name);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

export function renderEgo(container: HTMLElement, doc: EgoDoc, onNodeClick?: (id: string) => void): void {
  container.textContent = "";
  const problem = validateEgoDoc(doc);
  if (problem !== null) {
    const panel = document.createElement("div");
    panel.className = "error-panel";
    panel.textContent = `Cannot render network: ${problem}`;
    container.appendChild(panel);
    return;
  }
  if (doc.nodes.length <= 1 && doc.links.length === 0) {
    const empty = document.createElement("div");
    empty.className = "empty-state";
    empty.textContent = "No relationships of this kind.";
    container.appendChild(empty);
    return;
  }

  // center first so the layout pins it to the middle
  const ordered = [doc.center, ...doc.nodes.map((n) => n.id).filter((id) => id !== doc.center)];
  const positions = layoutForce(ordered, doc.links, EGO_WIDTH, EGO_HEIGHT);
  const maxWeight = Math.max(...doc.links.map((l) => l.weight), 1);
  const byId = new Map(doc.nodes.map((n) => [n.id, n]));

  const svg = el("svg", {
    viewBox: `0 0 ${EGO_WIDTH} ${EGO_HEIGHT}`,
    class: "ego-svg",
    role: "img",
  });

  for (const link of doc.links) {
    const a = positions.get(link.src)!;
    const b = positions.get(link.dst)!;
    const line = el("line", {
      x1: a.x.toFixed(1),
      y1: a.y.toFixed(1),
      x2: b.x.toFixed(1),
      y2: b.y.toFixed(1),
      class: "ego-link",
      "stroke-width": strokeWidth(link.weight, maxWeight).toFixed(2),
      "data-src": link.src,
      "data-dst": link.dst,
      "data-weight": String(link.weight),
    });
    const title = el("title", {});
    title.textContent = `${byId.get(link.src)?.name} — ${byId.get(link.dst)?.name}: ${link.weight}`;
    line.appendChild(title);
    svg.appendChild(line);
  }

  for (const node of doc.nodes) {
    const p = positions.get(node.id)!;
    const group = el("g", { class: "ego-node", "data-id": node.id, "data-tag": node.tag });
    const circle = el("circle", {
      cx: p.x.toFixed(1),
      cy: p.y.toFixed(1),
      r: nodeRadius(node.size).toFixed(2),
      fill: tagColor(node.tag),
    });
    const title = el("title", {});
    title.textContent = `${node.name} (${TAG_LABELS[node.tag]})`;
    circle.appendChild(title);
    const label = el("text", {
      x: p.x.toFixed(1),
      y: (p.y - nodeRadius(node.size) - 4).toFixed(1),
      class: "ego-label",
      "text-anchor": "middle",
    });
    label.textContent = node.name;
    group.appendChild(circle);
    group.appendChild(label);
    if (onNodeClick && node.id !== doc.center) {
      group.addEventListener("click", () => onNodeClick(node.id));
      group.classList.add("clickable");
    }
    svg.appendChild(group);
  }
  container.appendChild(svg);

  const legend = document.createElement("div");
  legend.className = "legend";
  const present = new Set(doc.nodes.map((n) => n.tag));
  for (const tag of Object.keys(TAG_COLORS)) {
    if (!present.has(tag as never)) continue;
    const entry = document.createElement("span");
    entry.className = "legend-entry";
    entry.dataset.tag = tag;
    const swatch = document.createElement("span");
    swatch.className = "swatch";
    swatch.style.backgroundColor = tagColor(tag);
    entry.appendChild(swatch);
    entry.appendChild(document.createTextNode(TAG_LABELS[tag]));
    legend.appendChild(entry);
  }
  container.appendChild(legend);
}
