// Tiny deterministic force-directed layout: seeded circular start, spring
// attraction on links, pairwise repulsion, linear cooling. No randomness,
// so a given document always lays out identically (snapshot-friendly).

export interface Point {
  x: number;
  y: number;
}

export function layoutForce(
  ids: string[],
  links: { src: string; dst: string }[],
  width: number,
  height: number,
  iterations = 150,
): Map<string, Point> {
  const pos = new Map<string, Point>();
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) * 0.32;
  ids.forEach((id, i) => {
    if (i === 0) {
      pos.set(id, { x: cx, y: cy }); // first id is the ego center
    } else {
      const angle = (2 * Math.PI * (i - 1)) / Math.max(1, ids.length - 1);
      pos.set(id, { x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) });
    }
  });
  if (ids.length <= 1) return pos;

  const spring = Math.min(width, height) * 0.28;
  const repulse = spring * spring * 0.45;

  for (let iter = 0; iter < iterations; iter++) {
    const cool = 1 - iter / iterations;
    const disp = new Map<string, Point>(ids.map((id) => [id, { x: 0, y: 0 }]));

    for (let i = 0; i < ids.length; i++) {
      for (let j = i + 1; j < ids.length; j++) {
        const a = pos.get(ids[i])!;
        const b = pos.get(ids[j])!;
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        let d2 = dx * dx + dy * dy;
        if (d2 < 1e-6) {
          // deterministic tiebreak for coincident nodes
          dx = 0.1 * (i + 1);
          dy = 0.1 * (j + 1);
          d2 = dx * dx + dy * dy;
        }
        const f = repulse / d2;
        const da = disp.get(ids[i])!;
        const db = disp.get(ids[j])!;
        da.x += dx * f * 0.01;
        da.y += dy * f * 0.01;
        db.x -= dx * f * 0.01;
        db.y -= dy * f * 0.01;
      }
    }

    for (const link of links) {
      const a = pos.get(link.src);
      const b = pos.get(link.dst);
      if (!a || !b) continue;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const d = Math.max(1e-3, Math.sqrt(dx * dx + dy * dy));
      const f = ((d - spring) / d) * 0.05;
      const da = disp.get(link.src)!;
      const db = disp.get(link.dst)!;
      da.x += dx * f;
      da.y += dy * f;
      db.x -= dx * f;
      db.y -= dy * f;
    }

    for (const id of ids) {
      const p = pos.get(id)!;
      const d = disp.get(id)!;
      p.x += d.x * cool;
      p.y += d.y * cool;
      const margin = 24;
      p.x = Math.min(width - margin, Math.max(margin, p.x));
      p.y = Math.min(height - margin, Math.max(margin, p.y));
    }
  }
  return pos;
}
