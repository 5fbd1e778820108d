"""Mutable search board shared by the solvers, the enumerator and the game
engine.  Not part of the public API; public entry points convert to and from
the immutable Covering."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .model import (
    Cell,
    Covering,
    Region,
    Tile,
    TileKind,
    Vertex,
    incident_cells,
    cell_vertices,
)

KIND_ORDER = (TileKind.VDOMINO, TileKind.HDOMINO, TileKind.MONOMINO)


@dataclass(frozen=True)
class Deduction:
    """A tile forced by the local rule at `cause`."""

    kind: TileKind
    anchor: Cell
    cause: Vertex


@dataclass(frozen=True)
class Contradiction:
    """The partial covering admits no completion."""

    vertex: Vertex
    reason: str  # "four-meet" | "uncoverable-cell"
    cell: Optional[Cell] = None


class Board:
    """Tile placements on a region with O(1) undo and fast legality checks."""

    def __init__(self, region: Region):
        self.region = region
        self.cell_order: list[Cell] = sorted(region.cells)
        self.grid: dict[Cell, int] = {}
        self.tiles: list[Optional[tuple[TileKind, Cell]]] = []
        self.interior: list[Vertex] = region.interior_vertices()
        self.interior_set = set(self.interior)

    @classmethod
    def from_covering(cls, covering: Covering) -> "Board":
        board = cls(covering.region)
        for t in sorted(covering.tiles.values(), key=lambda t: t.id):
            if not board.fits(t.kind, t.anchor):
                raise ValueError(f"covering violates the tatami rule near {t}")
            board.place(t.kind, t.anchor)
        return board

    def to_covering(self, color_tags: Optional[dict[int, str]] = None) -> Covering:
        tiles = []
        for tid, entry in enumerate(self.tiles):
            if entry is None:
                continue
            kind, anchor = entry
            tag = color_tags.get(tid) if color_tags else None
            tiles.append(Tile(tid, kind, anchor, tag))
        return Covering(self.region, tiles)

    # -- placement --------------------------------------------------------

    def fits(self, kind: TileKind, anchor: Cell) -> bool:
        span = kind.cells(anchor)
        region = self.region.cells
        grid = self.grid
        for c in span:
            if c not in region or c in grid:
                return False
        return not self._blocked_vertices(span, first_only=True)

    def blocked_vertices(self, kind: TileKind, anchor: Cell) -> list[Vertex]:
        return self._blocked_vertices(kind.cells(anchor), first_only=False)

    def _blocked_vertices(self, span: tuple[Cell, ...], first_only: bool) -> list[Vertex]:
        region = self.region.cells
        grid = self.grid
        span_set = set(span)
        blocked = []
        seen = set()
        for cell in span:
            for v in cell_vertices(cell):
                if v in seen or v not in self.interior_set:
                    continue
                seen.add(v)
                ids = set()
                full = True
                for c in incident_cells(v):
                    if c in span_set:
                        ids.add(-1)
                    else:
                        tid = grid.get(c)
                        if tid is None:
                            full = False
                            break
                        ids.add(tid)
                if full and len(ids) == 4:
                    if first_only:
                        return [v]
                    blocked.append(v)
        return sorted(blocked)

    def place(self, kind: TileKind, anchor: Cell) -> int:
        tid = len(self.tiles)
        self.tiles.append((kind, anchor))
        for c in kind.cells(anchor):
            self.grid[c] = tid
        return tid

    def unplace(self, tid: int) -> None:
        entry = self.tiles[tid]
        assert entry is not None
        kind, anchor = entry
        for c in kind.cells(anchor):
            del self.grid[c]
        # Pop trailing placements so tids stay dense during DFS.
        self.tiles[tid] = None
        while self.tiles and self.tiles[-1] is None:
            self.tiles.pop()

    def first_uncovered(self) -> Optional[Cell]:
        for c in self.cell_order:
            if c not in self.grid:
                return c
        return None

    def is_complete(self) -> bool:
        return len(self.grid) == len(self.cell_order)

    def canonical(self) -> tuple[tuple[str, int, int], ...]:
        return tuple(
            sorted(
                (kind.value, anchor[0], anchor[1])
                for entry in self.tiles
                if entry is not None
                for kind, anchor in [entry]
            )
        )


# Forced-move deduction -------------------------------------------------------


def forced_moves(board: Board) -> "list[Deduction] | Contradiction":
    """One round of the local deduction rule, in row-major vertex order.

    At a vertex whose four in-region cells hold two covered cells from two
    distinct tiles and two adjacent empty cells, the empty pair must be one
    domino in any completion.  A vertex with three distinct tiles and one
    empty cell can never be completed, nor can an empty cell with no legal
    candidate tile.
    """
    grid = board.grid
    deductions: list[Deduction] = []
    seen_tiles: set[tuple[TileKind, Cell]] = set()
    for v in board.interior:
        four = incident_cells(v)
        empty = [c for c in four if c not in grid]
        if not empty:
            continue
        covered_ids = {grid[c] for c in four if c in grid}
        if len(empty) == 1 and len(covered_ids) == 3:
            return Contradiction(v, "four-meet")
        if len(empty) == 2 and len(covered_ids) == 2:
            (r1, c1), (r2, c2) = sorted(empty)
            if r1 == r2 and c2 == c1 + 1:
                kind, anchor = TileKind.HDOMINO, (r1, c1)
            elif c1 == c2 and r2 == r1 + 1:
                kind, anchor = TileKind.VDOMINO, (r1, c1)
            else:
                continue
            if (kind, anchor) in seen_tiles:
                continue
            seen_tiles.add((kind, anchor))
            if not board.fits(kind, anchor):
                return Contradiction(v, "uncoverable-cell", anchor)
            deductions.append(Deduction(kind, anchor, v))
    if not deductions:
        # Dead-cell scan: an empty cell with no legal candidate tile.
        for cell in board.cell_order:
            if cell in grid:
                continue
            r, c = cell
            candidates = (
                (TileKind.MONOMINO, (r, c)),
                (TileKind.HDOMINO, (r, c)),
                (TileKind.HDOMINO, (r, c - 1)),
                (TileKind.VDOMINO, (r, c)),
                (TileKind.VDOMINO, (r - 1, c)),
            )
            if not any(board.fits(k, a) for k, a in candidates):
                return Contradiction((r, c), "uncoverable-cell", cell)
    return deductions


def propagate(board: Board) -> "list[tuple[int, Deduction]] | Contradiction":
    """Apply forced moves to fixpoint, mutating the board.

    Returns the applied (tile id, deduction) trace, or a Contradiction, in
    which case the board is rolled back to its initial state.
    """
    trace: list[tuple[int, Deduction]] = []

    def rollback() -> None:
        for tid, _ in reversed(trace):
            board.unplace(tid)

    while True:
        result = forced_moves(board)
        if isinstance(result, Contradiction):
            rollback()
            return result
        if not result:
            return trace
        for ded in result:
            span = ded.kind.cells(ded.anchor)
            existing = {board.grid.get(c) for c in span}
            if existing == {None}:
                if not board.fits(ded.kind, ded.anchor):
                    rollback()
                    return Contradiction(ded.cause, "uncoverable-cell", ded.anchor)
                trace.append((board.place(ded.kind, ded.anchor), ded))
            elif len(existing) == 1 and None not in existing:
                tid = existing.pop()
                if board.tiles[tid] == (ded.kind, ded.anchor):
                    continue  # already placed by an earlier deduction
                rollback()
                return Contradiction(ded.cause, "uncoverable-cell", ded.anchor)
            else:
                rollback()
                return Contradiction(ded.cause, "uncoverable-cell", ded.anchor)
