// Fetch mock backed by the recorded API fixtures: tests replay exactly
// what the real server returned, so every displayed value is traceable.

import { vi } from "vitest";
import rawFixtures from "./fixtures/fixtures.json";

interface Recorded {
  status: number;
  body: unknown;
}

const fixtures = rawFixtures as unknown as Record<string, Recorded>;

export interface FetchLog {
  calls: string[];
}

export function installFixtureFetch(
  overrides: Record<string, Recorded> = {},
): FetchLog {
  const log: FetchLog = { calls: [] };
  const table = { ...fixtures, ...overrides };
  vi.stubGlobal(
    "fetch",
    vi.fn(async (input: RequestInfo | URL, init?: RequestInit) => {
      const url = String(input);
      const method = init?.method ?? "GET";
      const key = `${method} ${url}`;
      log.calls.push(key);
      const hit = table[key];
      if (!hit) {
        return new Response(
          JSON.stringify({ status: 404, kind: "unrecorded", message: `no fixture for ${key}` }),
          { status: 404, headers: { "content-type": "application/json" } },
        );
      }
      return new Response(JSON.stringify(hit.body), {
        status: hit.status,
        headers: { "content-type": "application/json" },
      });
    }),
  );
  return log;
}

export function fixture<T>(key: string): T {
  const hit = fixtures[key];
  if (!hit) throw new Error(`no recorded fixture for ${key}`);
  return hit.body as T;
}

export function freshRoot(): HTMLElement {
  document.body.innerHTML = '<div id="app"></div>';
  return document.getElementById("app")!;
}

/** Set the hash without firing hashchange, so tests control routing. */
export function setHash(hash: string): void {
  history.replaceState(null, "", hash || "#/");
}

/** Flush pending microtasks so awaited fetches settle. */
export async function settle(times = 6): Promise<void> {
  for (let i = 0; i < times; i++) {
    await Promise.resolve();
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}
