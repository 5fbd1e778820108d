import { describe, expect, it } from "vitest";

import {
  boardGrid,
  boardLines,
  explainVerdict,
  projectionProgress,
  statusLine,
} from "../src/board.js";
import type { SessionState } from "../src/types.js";

function state(overrides: Partial<SessionState> = {}): SessionState {
  return {
    schema_version: 1,
    id: "s1",
    mode: "oku",
    puzzle_id: "p",
    title: "",
    region: { rows: 2, cols: 3, mask: ["###", "###"] },
    tiles: [],
    status: { solved: false },
    move_log: [],
    ...overrides,
  };
}

describe("boardGrid", () => {
  it("renders empty in-region cells as dots", () => {
    expect(boardLines(state())).toEqual(["...", "..."]);
  });

  it("marks cells outside an irregular region", () => {
    const s = state({ region: { rows: 2, cols: 3, mask: ["##.", "###"] } });
    const grid = boardGrid(s);
    expect(grid[0]?.[2]?.inRegion).toBe(false);
    expect(boardLines(s)).toEqual(["## ".replace(/#/g, "."), "..."]);
  });

  it("spans dominoes across both cells with paired glyphs", () => {
    const s = state({
      tiles: [
        { id: 0, kind: "M", row: 0, col: 0, color: null },
        { id: 1, kind: "V", row: 0, col: 2, color: null },
        { id: 2, kind: "H", row: 1, col: 0, color: "given" },
      ],
    });
    expect(boardLines(s)).toEqual(["•.^", "<>v"]);
    const grid = boardGrid(s);
    expect(grid[1]?.[1]?.tileId).toBe(2);
    expect(grid[1]?.[1]?.given).toBe(true);
    expect(grid[0]?.[0]?.given).toBe(false);
  });

  it("rejects overlapping wire states", () => {
    const s = state({
      tiles: [
        { id: 0, kind: "H", row: 0, col: 0, color: null },
        { id: 1, kind: "V", row: 0, col: 1, color: null },
      ],
    });
    expect(() => boardGrid(s)).toThrow(/overlap/);
  });

  it("rejects tiles that leave the board", () => {
    const s = state({
      tiles: [{ id: 0, kind: "H", row: 0, col: 2, color: null }],
    });
    expect(() => boardGrid(s)).toThrow(/leaves the board/);
  });
});

describe("projectionProgress", () => {
  it("is empty outside tomoku", () => {
    expect(projectionProgress(state())).toEqual([]);
  });

  it("flattens rows before columns with indices", () => {
    const s = state({
      mode: "tomoku",
      status: {
        solved: false,
        projections: {
          rows: [
            { have: [0, 0, 0], target: [1, 2, 0], matched: false },
            { have: [1, 2, 0], target: [1, 2, 0], matched: true },
          ],
          cols: [{ have: [0, 0, 0], target: [0, 0, 0], matched: true }],
        },
      },
    });
    const progress = projectionProgress(s);
    expect(progress.map((p) => [p.axis, p.index, p.matched])).toEqual([
      ["row", 0, false],
      ["row", 1, true],
      ["col", 0, true],
    ]);
  });
});

describe("statusLine", () => {
  it("counts covered cells in free play", () => {
    const s = state({
      tiles: [
        { id: 0, kind: "M", row: 0, col: 0, color: null },
        { id: 1, kind: "H", row: 1, col: 0, color: null },
      ],
    });
    expect(statusLine(s)).toBe("3 cells covered");
  });

  it("reports solved", () => {
    expect(statusLine(state({ status: { solved: true } }))).toBe("solved");
  });

  it("summarizes tomoku progress", () => {
    const s = state({
      mode: "tomoku",
      status: {
        solved: false,
        projections: {
          rows: [{ have: [0, 0, 0], target: [0, 0, 0], matched: true }],
          cols: [{ have: [0, 0, 0], target: [1, 0, 0], matched: false }],
        },
      },
    });
    expect(statusLine(s)).toBe("1/2 projections matched");
  });

  it("reports the player to move and the winner in noku", () => {
    const playing = state({
      mode: "noku",
      status: { solved: false, to_move: 2, winner: null },
    });
    expect(statusLine(playing)).toBe("player 2 to move");
    const done = state({
      mode: "noku",
      status: { solved: false, to_move: 1, winner: 1 },
    });
    expect(statusLine(done)).toBe("player 1 wins");
  });
});

describe("explainVerdict", () => {
  it("covers all verdicts", () => {
    expect(explainVerdict({ verdict: "Legal", legal: true })).toBe("placed");
    expect(
      explainVerdict({ verdict: "OutOfRegion", legal: false, cells: [[0, 5]] }),
    ).toContain("(0,5)");
    expect(
      explainVerdict({ verdict: "Overlap", legal: false, tile_ids: [3] }),
    ).toContain("tile 3");
    expect(
      explainVerdict({
        verdict: "TatamiBlocked",
        legal: false,
        blocking_vertices: [[1, 1]],
      }),
    ).toContain("four tiles would meet at (1,1)");
  });
});
