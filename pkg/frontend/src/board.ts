/** Pure view-model: project a session state onto renderable structures. */

import type {
  SessionState,
  SessionStatus,
  TileJson,
  TileKind,
  Verdict,
} from "./types.js";

export interface CellView {
  row: number;
  col: number;
  /** false for cells outside the playable region. */
  inRegion: boolean;
  /** Tile occupying the cell, if any. */
  tileId: number | null;
  kind: TileKind | null;
  /** true when the tile is a fixed given that cannot be removed. */
  given: boolean;
  /** Board glyph: "•" monomino, "<"/">" horizontal, "^"/"v" vertical,
   *  "." empty, " " outside the region. */
  glyph: string;
}

const GLYPHS: Record<TileKind, [string, string]> = {
  M: ["•", "•"],
  H: ["<", ">"],
  V: ["^", "v"],
};

function cellsOf(tile: TileJson): [number, number][] {
  const { row, col } = tile;
  if (tile.kind === "H") return [[row, col], [row, col + 1]];
  if (tile.kind === "V") return [[row, col], [row + 1, col]];
  return [[row, col]];
}

/** A rows x cols grid of cell views built from the wire state. */
export function boardGrid(state: SessionState): CellView[][] {
  const { rows, cols, mask } = state.region;
  const grid: CellView[][] = [];
  for (let r = 0; r < rows; r++) {
    const line = mask[r] ?? "";
    const row: CellView[] = [];
    for (let c = 0; c < cols; c++) {
      const inRegion = line[c] === "#";
      row.push({
        row: r,
        col: c,
        inRegion,
        tileId: null,
        kind: null,
        given: false,
        glyph: inRegion ? "." : " ",
      });
    }
    grid.push(row);
  }
  for (const tile of state.tiles) {
    cellsOf(tile).forEach(([r, c], i) => {
      const cell = grid[r]?.[c];
      if (!cell) throw new Error(`tile ${tile.id} leaves the board at ${r},${c}`);
      if (cell.tileId !== null) {
        throw new Error(`tiles ${cell.tileId} and ${tile.id} overlap at ${r},${c}`);
      }
      cell.tileId = tile.id;
      cell.kind = tile.kind;
      cell.given = tile.color === "given";
      cell.glyph = GLYPHS[tile.kind][i] as string;
    });
  }
  return grid;
}

/** Plain-text board, one string per row. */
export function boardLines(state: SessionState): string[] {
  return boardGrid(state).map((row) => row.map((c) => c.glyph).join(""));
}

export interface ProjectionProgress {
  axis: "row" | "col";
  index: number;
  have: [number, number, number];
  target: [number, number, number];
  matched: boolean;
}

/** Tomoku progress, rows first then columns; empty for other modes. */
export function projectionProgress(state: SessionState): ProjectionProgress[] {
  const proj = state.status.projections;
  if (!proj) return [];
  const rows = proj.rows.map((p, index) => ({
    axis: "row" as const,
    index,
    have: p.have,
    target: p.target,
    matched: p.matched,
  }));
  const cols = proj.cols.map((p, index) => ({
    axis: "col" as const,
    index,
    have: p.have,
    target: p.target,
    matched: p.matched,
  }));
  return [...rows, ...cols];
}

/** One-line human summary of where the session stands. */
export function statusLine(state: SessionState): string {
  const status: SessionStatus = state.status;
  if (state.mode === "noku") {
    if (status.winner != null) return `player ${status.winner} wins`;
    return `player ${status.to_move} to move`;
  }
  if (status.solved) return "solved";
  if (status.projections) {
    const all = projectionProgress(state);
    const matched = all.filter((p) => p.matched).length;
    return `${matched}/${all.length} projections matched`;
  }
  const covered = state.tiles.reduce(
    (n, t) => n + (t.kind === "M" ? 1 : 2),
    0,
  );
  return `${covered} cells covered`;
}

/** Human-readable explanation of a placement verdict. */
export function explainVerdict(verdict: Verdict): string {
  switch (verdict.verdict) {
    case "Legal":
      return "placed";
    case "OutOfRegion":
      return `outside the region at ${verdict.cells
        .map(([r, c]) => `(${r},${c})`)
        .join(", ")}`;
    case "Overlap":
      return `overlaps tile ${verdict.tile_ids.join(", ")}`;
    case "TatamiBlocked":
      return `four tiles would meet at ${verdict.blocking_vertices
        .map(([r, c]) => `(${r},${c})`)
        .join(", ")}`;
  }
}
