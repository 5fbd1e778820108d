"""Session-oriented HTTP facade: a thin, server-authoritative layer over the
core model so a human can play all five games interactively.

Endpoints (all responses carry `schema_version`):
    GET  /puzzles
    POST /sessions                 {puzzle_id} | {document}, optional vs_ai
    GET  /sessions/{id}
    POST /sessions/{id}/place      {kind, row, col}
    POST /sessions/{id}/remove     {tile_id}
    GET  /sessions/{id}/hint
    POST /sessions/{id}/noku/ai-move

Sessions live in memory; an optional append-only JSON-lines log per session
allows byte-identical replay after a restart.
"""
from __future__ import annotations

import json
import secrets
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .model import Covering, Legal, Region, Tile, TileKind
from .noku import GameState, Move, Ruleset, solve_noku
from .puzzle_io import PuzzleDocument, SchemaError, parse_puzzle, render_puzzle
from .search import Board, Contradiction, forced_moves
from .solvers import Mode, PuzzleSpec, projections as covering_projections

SCHEMA_VERSION = 1
NOKU_AI_AREA_LIMIT = 20  # largest board the engine will agree to play


def _bundled_puzzle_dir() -> Path:
    return Path(__file__).resolve().parent.parent.parent / "puzzles"


@dataclass
class Session:
    id: str
    puzzle: PuzzleSpec
    covering: Covering
    vs_ai: bool = False
    to_move: int = 1
    move_log: list[dict] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def noku(self) -> bool:
        return self.puzzle.mode is Mode.NOKU

    def allowed_kinds(self) -> tuple[TileKind, ...]:
        if self.noku:
            return Ruleset().kinds_for(self.to_move)
        if self.puzzle.mode is Mode.LAZY_PAVER:
            return (TileKind.VDOMINO, TileKind.HDOMINO)
        return (TileKind.VDOMINO, TileKind.HDOMINO, TileKind.MONOMINO)

    def game_state(self) -> GameState:
        return GameState(
            self.puzzle.region,
            tuple(sorted(self.covering.tiles.values(), key=lambda t: t.id)),
            self.to_move,
        )


class CreateSessionRequest(BaseModel):
    puzzle_id: Optional[str] = None
    document: Optional[str] = None
    vs_ai: bool = False


class PlaceRequest(BaseModel):
    kind: str
    row: int
    col: int


class RemoveRequest(BaseModel):
    tile_id: int


def _error(status: int, code: str, message: str) -> HTTPException:
    return HTTPException(status, {"code": code, "message": message})


class TatamiService:
    """All state and game logic behind the HTTP routes."""

    def __init__(self, puzzle_dir: Optional[Path] = None, log_dir: Optional[Path] = None):
        self.log_dir = Path(log_dir) if log_dir else None
        if self.log_dir:
            self.log_dir.mkdir(parents=True, exist_ok=True)
        self.sessions: dict[str, Session] = {}
        self.sessions_lock = threading.Lock()
        self.library: dict[str, PuzzleDocument] = {}
        puzzle_dir = Path(puzzle_dir) if puzzle_dir else _bundled_puzzle_dir()
        if puzzle_dir.is_dir():
            for path in sorted(puzzle_dir.glob("*.tatami")):
                doc = parse_puzzle(path.read_text())
                self.library[doc.puzzle.id or path.stem] = doc

    # -- session plumbing ---------------------------------------------------

    def _fresh_session(self, puzzle: PuzzleSpec, vs_ai: bool, sid: str) -> Session:
        tiles = [
            Tile(i, t.kind, t.anchor, t.color_tag or "given")
            for i, t in enumerate(sorted(puzzle.given_tiles, key=lambda t: t.id))
        ]
        return Session(sid, puzzle, Covering(puzzle.region, tiles), vs_ai=vs_ai)

    def create_session(self, req: CreateSessionRequest) -> Session:
        if (req.puzzle_id is None) == (req.document is None):
            raise _error(400, "BadRequest", "provide exactly one of puzzle_id, document")
        if req.puzzle_id is not None:
            doc = self.library.get(req.puzzle_id)
            if doc is None:
                raise _error(404, "UnknownPuzzle", f"no puzzle {req.puzzle_id!r}")
        else:
            try:
                doc = parse_puzzle(req.document)
            except (SchemaError, ValueError) as exc:
                raise _error(400, "SchemaError", str(exc))
        puzzle = doc.puzzle
        if req.vs_ai:
            if puzzle.mode is not Mode.NOKU:
                raise _error(400, "BadRequest", "vs_ai applies to noku sessions only")
            if puzzle.region.area > NOKU_AI_AREA_LIMIT:
                raise _error(400, "BoardTooLarge", "board exceeds the vs-AI budget")
        sid = secrets.token_hex(8)
        session = self._fresh_session(puzzle, req.vs_ai, sid)
        with self.sessions_lock:
            self.sessions[sid] = session
        self._log(session, {"action": "create", "document": render_puzzle(doc),
                            "vs_ai": req.vs_ai})
        return session

    def get_session(self, sid: str) -> Session:
        session = self.sessions.get(sid)
        if session is None:
            raise _error(404, "SessionNotFound", f"no session {sid!r}")
        return session

    def _log(self, session: Session, entry: dict) -> None:
        if self.log_dir:
            with (self.log_dir / f"{session.id}.jsonl").open("a") as fh:
                fh.write(json.dumps(entry, sort_keys=True) + "\n")

    def replay(self, log_path: Path) -> Session:
        """Rebuild a session from its append-only log."""
        session: Optional[Session] = None
        for line in log_path.read_text().splitlines():
            entry = json.loads(line)
            if entry["action"] == "create":
                doc = parse_puzzle(entry["document"])
                session = self._fresh_session(doc.puzzle, entry["vs_ai"], log_path.stem)
            elif entry["action"] == "place":
                self._apply_place(session, TileKind(entry["kind"]),
                                  (entry["row"], entry["col"]))
            elif entry["action"] == "remove":
                self._apply_remove(session, entry["tile_id"])
        if session is None:
            raise ValueError(f"empty session log {log_path}")
        with self.sessions_lock:
            self.sessions[session.id] = session
        return session

    # -- game logic ----------------------------------------------------------

    def _solved(self, session: Session) -> bool:
        if session.noku:
            return False
        if not session.covering.is_complete():
            return False
        if session.puzzle.mode is Mode.TOMOKU:
            return covering_projections(session.covering) == session.puzzle.projections
        return True

    def _noku_winner(self, session: Session) -> Optional[int]:
        """The winner if the game is over (player to move has no legal move)."""
        if not session.noku:
            return None
        board = Board.from_covering(session.covering)
        for kind in Ruleset().kinds_for(session.to_move):
            for anchor in board.cell_order:
                if board.fits(kind, anchor):
                    return None
        return 3 - session.to_move

    def _apply_place(self, session: Session, kind: TileKind, anchor) -> dict:
        if self._solved(session):
            raise _error(409, "PuzzleComplete", "the puzzle is already solved")
        if session.noku and self._noku_winner(session) is not None:
            raise _error(409, "GameOver", "the game is finished")
        if kind not in session.allowed_kinds():
            raise _error(400, "KindNotAllowed",
                         f"{kind.value} tiles cannot be placed here now")
        verdict = session.covering.can_place(kind, anchor)
        if isinstance(verdict, Legal):
            session.covering = session.covering.place(kind, anchor)
            if session.noku:
                session.to_move = 3 - session.to_move
            session.move_log.append(
                {"action": "place", "kind": kind.value, "row": anchor[0], "col": anchor[1]}
            )
            self._log(session, session.move_log[-1])
        return _verdict_json(verdict)

    def _apply_remove(self, session: Session, tile_id: int) -> None:
        if session.noku:
            raise _error(409, "RemovalForbidden", "noku has no takebacks")
        tile = session.covering.tiles.get(tile_id)
        if tile is None:
            raise _error(404, "UnknownTile", f"no tile {tile_id}")
        if tile.color_tag == "given":
            raise _error(409, "GivenTileFixed", "given tiles cannot be removed")
        session.covering = session.covering.remove(tile_id)
        session.move_log.append({"action": "remove", "tile_id": tile_id})
        self._log(session, session.move_log[-1])

    def ai_move(self, session: Session) -> Optional[dict]:
        state = session.game_state()
        verdict = solve_noku(state)
        move = verdict.best_move
        if move is None:
            moves = [
                Move(k, a)
                for k in state.ruleset.kinds_for(session.to_move)
                for a in sorted(state.region.cells)
                if Board.from_covering(session.covering).fits(k, a)
            ]
            if not moves:
                return None
            move = moves[0]  # losing position: play the first legal move
        self._apply_place(session, move.kind, move.anchor)
        return {"kind": move.kind.value, "row": move.anchor[0], "col": move.anchor[1]}

    # -- JSON views -----------------------------------------------------------

    def state_json(self, session: Session) -> dict:
        region = session.puzzle.region
        tiles = [
            {
                "id": t.id,
                "kind": t.kind.value,
                "row": t.anchor[0],
                "col": t.anchor[1],
                "color": t.color_tag,
            }
            for t in sorted(session.covering.tiles.values(), key=lambda t: t.id)
        ]
        status: dict[str, Any] = {"solved": self._solved(session)}
        if session.puzzle.mode is Mode.TOMOKU:
            have = covering_projections(
                Covering(region, session.covering.tiles.values())
            ) if region.is_rectangle() else None
            target = session.puzzle.projections
            status["projections"] = {
                "rows": [
                    {"have": list(h), "target": list(t), "matched": h == t}
                    for h, t in zip(have.rows, target.rows)
                ],
                "cols": [
                    {"have": list(h), "target": list(t), "matched": h == t}
                    for h, t in zip(have.cols, target.cols)
                ],
            }
        if session.noku:
            winner = self._noku_winner(session)
            status["to_move"] = session.to_move
            status["winner"] = winner
            status["vs_ai"] = session.vs_ai
        return {
            "schema_version": SCHEMA_VERSION,
            "id": session.id,
            "mode": session.puzzle.mode.value,
            "puzzle_id": session.puzzle.id,
            "title": session.puzzle.title,
            "region": {
                "rows": region.height,
                "cols": region.width,
                "mask": region.to_ascii().split("\n"),
            },
            "tiles": tiles,
            "status": status,
            "move_log": list(session.move_log),
        }

    def hint_json(self, session: Session) -> dict:
        if session.noku:
            raise _error(409, "HintUnavailable", "no hints in adversarial play")
        result = forced_moves(Board.from_covering(session.covering))
        payload: dict[str, Any] = {"schema_version": SCHEMA_VERSION}
        if isinstance(result, Contradiction):
            payload["contradiction"] = {
                "vertex": list(result.vertex),
                "reason": result.reason,
                "cell": list(result.cell) if result.cell else None,
            }
        elif result:
            payload["deductions"] = [
                {
                    "kind": d.kind.value,
                    "row": d.anchor[0],
                    "col": d.anchor[1],
                    "cause_vertex": list(d.cause),
                }
                for d in result
            ]
        else:
            payload["no_forced_move"] = True
        return payload


def _verdict_json(verdict) -> dict:
    name = type(verdict).__name__
    out: dict[str, Any] = {"verdict": name, "legal": bool(verdict)}
    if name == "TatamiBlocked":
        out["blocking_vertices"] = [list(v) for v in verdict.vertices]
    elif name == "Overlap":
        out["tile_ids"] = list(verdict.tile_ids)
    elif name == "OutOfRegion":
        out["cells"] = [list(c) for c in verdict.cells]
    return out


def create_app(
    puzzle_dir: Optional[Path] = None, log_dir: Optional[Path] = None
) -> FastAPI:
    service = TatamiService(puzzle_dir, log_dir)
    app = FastAPI(title="tatami", version="1.0")
    app.state.service = service

    @app.get("/puzzles")
    def list_puzzles():
        return {
            "schema_version": SCHEMA_VERSION,
            "puzzles": [
                {
                    "id": pid,
                    "mode": doc.puzzle.mode.value,
                    "title": doc.puzzle.title,
                    "difficulty": doc.puzzle.difficulty,
                    "rows": doc.puzzle.region.height,
                    "cols": doc.puzzle.region.width,
                }
                for pid, doc in sorted(service.library.items())
            ],
        }

    @app.post("/sessions")
    def create_session(req: CreateSessionRequest):
        session = service.create_session(req)
        return service.state_json(session)

    @app.get("/sessions/{sid}")
    def get_state(sid: str):
        return service.state_json(service.get_session(sid))

    @app.post("/sessions/{sid}/place")
    def place(sid: str, req: PlaceRequest):
        session = service.get_session(sid)
        try:
            kind = TileKind(req.kind)
        except ValueError:
            raise _error(400, "BadRequest", f"unknown kind {req.kind!r}")
        with session.lock:
            if session.noku and session.vs_ai and session.to_move != 1:
                raise _error(409, "NotYourTurn", "waiting for the engine's move")
            verdict = service._apply_place(session, kind, (req.row, req.col))
            reply = None
            if (
                session.noku
                and session.vs_ai
                and verdict["legal"]
                and service._noku_winner(session) is None
            ):
                reply = service.ai_move(session)
            out = service.state_json(session)
            out["placement"] = verdict
            if reply is not None:
                out["ai_move"] = reply
            return out

    @app.post("/sessions/{sid}/remove")
    def remove(sid: str, req: RemoveRequest):
        session = service.get_session(sid)
        with session.lock:
            service._apply_remove(session, req.tile_id)
            return service.state_json(session)

    @app.get("/sessions/{sid}/hint")
    def hint(sid: str):
        session = service.get_session(sid)
        with session.lock:
            return service.hint_json(session)

    @app.post("/sessions/{sid}/noku/ai-move")
    def noku_ai_move(sid: str):
        session = service.get_session(sid)
        with session.lock:
            if not session.noku:
                raise _error(409, "BadMode", "ai moves apply to noku sessions")
            if service._noku_winner(session) is not None:
                raise _error(409, "GameOver", "the game is finished")
            move = service.ai_move(session)
            out = service.state_json(session)
            out["ai_move"] = move
            return out

    return app
