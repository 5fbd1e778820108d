/** Thin typed client over the tatami HTTP service. */

import type {
  AiMoveResponse,
  HintResponse,
  PlaceResponse,
  PuzzleList,
  ServiceError,
  SessionState,
  TileKind,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class TatamiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const resp = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload: unknown = await resp.json();
    if (!resp.ok) {
      const detail = (payload as { detail?: ServiceError | string }).detail;
      if (detail && typeof detail === "object") {
        throw new ApiError(resp.status, detail.code, detail.message);
      }
      throw new ApiError(resp.status, "HttpError", String(detail ?? resp.status));
    }
    return payload as T;
  }

  listPuzzles(): Promise<PuzzleList> {
    return this.request("GET", "/puzzles");
  }

  createSession(opts: {
    puzzleId?: string;
    document?: string;
    vsAi?: boolean;
  }): Promise<SessionState> {
    return this.request("POST", "/sessions", {
      puzzle_id: opts.puzzleId,
      document: opts.document,
      vs_ai: opts.vsAi ?? false,
    });
  }

  getSession(id: string): Promise<SessionState> {
    return this.request("GET", `/sessions/${id}`);
  }

  place(
    id: string,
    kind: TileKind,
    row: number,
    col: number,
  ): Promise<PlaceResponse> {
    return this.request("POST", `/sessions/${id}/place`, { kind, row, col });
  }

  remove(id: string, tileId: number): Promise<SessionState> {
    return this.request("POST", `/sessions/${id}/remove`, { tile_id: tileId });
  }

  hint(id: string): Promise<HintResponse> {
    return this.request("GET", `/sessions/${id}/hint`);
  }

  aiMove(id: string): Promise<AiMoveResponse> {
    return this.request("POST", `/sessions/${id}/noku/ai-move`);
  }
}
