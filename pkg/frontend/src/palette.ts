// Fixed identity-tag palette. The API sends presentation-free tags; these
// are the documented colors every view keys off (see frontend/README.md).

export const TAG_COLORS: Record<string, string> = {
  center: "#1f77b4", // blue
  advisor: "#d62728", // red
  advisee: "#2ca02c", // green
  coauthor: "#ff7f0e", // orange
  other: "#9467bd", // purple
};

export const TAG_LABELS: Record<string, string> = {
  center: "selected scholar",
  advisor: "advisor",
  advisee: "advisee",
  coauthor: "coauthor",
  other: "other",
};

export function tagColor(tag: string): string {
  return TAG_COLORS[tag] ?? TAG_COLORS.other;
}
