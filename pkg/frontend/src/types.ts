/** Wire types for the tatami HTTP service (schema_version 1). */

export type TileKind = "M" | "H" | "V";

export interface PuzzleSummary {
  id: string;
  mode: string;
  title: string;
  difficulty: string;
  rows: number;
  cols: number;
}

export interface PuzzleList {
  schema_version: number;
  puzzles: PuzzleSummary[];
}

export interface TileJson {
  id: number;
  kind: TileKind;
  row: number;
  col: number;
  color: string | null;
}

export interface ProjectionEntry {
  have: [number, number, number];
  target: [number, number, number];
  matched: boolean;
}

export interface SessionStatus {
  solved: boolean;
  projections?: { rows: ProjectionEntry[]; cols: ProjectionEntry[] };
  to_move?: 1 | 2;
  winner?: 1 | 2 | null;
  vs_ai?: boolean;
}

export interface SessionState {
  schema_version: number;
  id: string;
  mode: string;
  puzzle_id: string;
  title: string;
  region: { rows: number; cols: number; mask: string[] };
  tiles: TileJson[];
  status: SessionStatus;
  move_log: unknown[];
}

export type Verdict =
  | { verdict: "Legal"; legal: true }
  | { verdict: "OutOfRegion"; legal: false; cells: [number, number][] }
  | { verdict: "Overlap"; legal: false; tile_ids: number[] }
  | {
      verdict: "TatamiBlocked";
      legal: false;
      blocking_vertices: [number, number][];
    };

export interface PlaceResponse extends SessionState {
  placement: Verdict;
  ai_move?: { kind: TileKind; row: number; col: number };
}

export interface HintDeduction {
  kind: TileKind;
  row: number;
  col: number;
  cause_vertex: [number, number];
}

export interface HintResponse {
  schema_version: number;
  deductions?: HintDeduction[];
  contradiction?: {
    vertex: [number, number];
    reason: string;
    cell: [number, number] | null;
  };
  no_forced_move?: boolean;
}

export interface AiMoveResponse extends SessionState {
  ai_move: { kind: TileKind; row: number; col: number } | null;
}

export interface ServiceError {
  code: string;
  message: string;
}
