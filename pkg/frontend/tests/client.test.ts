/** Integration tests against a live service instance.
 *
 * The suite boots `uvicorn` with the bundled puzzle library on a test port
 * and exercises the client end to end over real HTTP.
 */

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { boardLines, statusLine } from "../src/board.js";
import { ApiError, TatamiClient } from "../src/client.js";

const PORT = 8765;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
const client = new TatamiClient(BASE);

async function waitForServer(): Promise<void> {
  for (let i = 0; i < 100; i++) {
    try {
      const resp = await fetch(`${BASE}/puzzles`);
      if (resp.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 200));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "uvicorn", "--factory", "tatami.service:create_app",
     "--port", String(PORT), "--log-level", "warning"],
    { cwd: "..", stdio: "ignore" },
  );
  await waitForServer();
});

afterAll(() => {
  server.kill();
});

describe("puzzle library", () => {
  it("lists the bundled corpus", async () => {
    const list = await client.listPuzzles();
    expect(list.schema_version).toBe(1);
    const ids = list.puzzles.map((p) => p.id);
    expect(ids).toContain("oku-5x5");
    expect(ids).toContain("noku-2x6");
  });
});

describe("free play", () => {
  it("creates a session and renders the empty board", async () => {
    const s = await client.createSession({ puzzleId: "oku-5x5" });
    expect(s.mode).toBe("oku");
    expect(boardLines(s)).toEqual([".....", ".....", ".....", ".....", "....."]);
    expect(statusLine(s)).toBe("0 cells covered");
  });

  it("places, observes verdicts, and removes", async () => {
    const s = await client.createSession({ puzzleId: "oku-5x5" });
    const placed = await client.place(s.id, "M", 0, 0);
    expect(placed.placement.verdict).toBe("Legal");
    expect(boardLines(placed)[0]).toBe("•....");

    const overlap = await client.place(s.id, "H", 0, 0);
    expect(overlap.placement.verdict).toBe("Overlap");
    expect(overlap.tiles).toHaveLength(1);

    await client.place(s.id, "H", 0, 1);
    await client.place(s.id, "V", 1, 0);
    const blocked = await client.place(s.id, "M", 1, 1);
    expect(blocked.placement.verdict).toBe("TatamiBlocked");

    const afterRemove = await client.remove(s.id, 0);
    expect(afterRemove.tiles.map((t) => t.id)).not.toContain(0);
  });

  it("serves hints once the position forces moves", async () => {
    const s = await client.createSession({ puzzleId: "oku-5x5" });
    const fresh = await client.hint(s.id);
    expect(fresh.no_forced_move).toBe(true);

    for (const [kind, row, col] of [
      ["M", 2, 2], ["H", 1, 1], ["V", 1, 3], ["H", 3, 2], ["V", 2, 1],
    ] as const) {
      const resp = await client.place(s.id, kind, row, col);
      expect(resp.placement.legal).toBe(true);
    }
    const hint = await client.hint(s.id);
    expect(hint.deductions?.length).toBeGreaterThan(0);
  });
});

describe("errors", () => {
  it("maps service errors to ApiError with the wire code", async () => {
    await expect(client.getSession("absent")).rejects.toMatchObject({
      name: "ApiError",
      status: 404,
      code: "SessionNotFound",
    });
    await expect(
      client.createSession({ puzzleId: "nope" }),
    ).rejects.toMatchObject({ code: "UnknownPuzzle" });
  });

  it("rejects forbidden kinds in lazy-paver", async () => {
    const s = await client.createSession({ puzzleId: "lazy-paver-4x6" });
    await expect(client.place(s.id, "M", 0, 0)).rejects.toMatchObject({
      code: "KindNotAllowed",
    });
  });

  it("keeps given tiles fixed in consultant sessions", async () => {
    const s = await client.createSession({ puzzleId: "consultant-4x6-yes" });
    const given = s.tiles.find((t) => t.color === "given");
    expect(given).toBeDefined();
    await expect(client.remove(s.id, given!.id)).rejects.toMatchObject({
      code: "GivenTileFixed",
    });
  });
});

describe("tomoku", () => {
  it("tracks projection progress", async () => {
    const s = await client.createSession({ puzzleId: "tomoku-4x5-s3" });
    expect(s.status.projections?.rows).toHaveLength(4);
    expect(s.status.projections?.cols).toHaveLength(5);
    expect(statusLine(s)).toMatch(/^\d+\/9 projections matched$/);
  });
});

describe("noku", () => {
  it("plays against the exact engine", async () => {
    const s = await client.createSession({ puzzleId: "noku-2x6", vsAi: true });
    const out = await client.place(s.id, "V", 0, 0);
    expect(out.ai_move).toBeDefined();
    expect(["H", "M"]).toContain(out.ai_move!.kind);
    expect(out.status.to_move).toBe(1);
    expect(out.tiles).toHaveLength(2);
  });

  it("enforces per-player kinds and turn order", async () => {
    const s = await client.createSession({ puzzleId: "noku-2x6" });
    await expect(client.place(s.id, "H", 0, 0)).rejects.toMatchObject({
      code: "KindNotAllowed",
    });
    const after = await client.place(s.id, "V", 0, 0);
    expect(after.status.to_move).toBe(2);
    await expect(client.hint(s.id)).rejects.toMatchObject({
      code: "HintUnavailable",
    });
    const engine = await client.aiMove(s.id);
    expect(engine.ai_move).not.toBeNull();
    expect(engine.status.to_move).toBe(1);
  });
});
