"""One backtracking engine with forced-move propagation, specialized to the
four single-player puzzles: Oku (cover the region), Tomoku (match row/column
projections), Lazy Paver (dominoes only), and Paving Consultant (complete a
given partial covering)."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional

from .model import Cell, Covering, Region, Tile, TileKind, violations
from .search import KIND_ORDER, Board, Contradiction, propagate as _propagate
from .structure import NonRectangularError


class MalformedPuzzleError(ValueError):
    """The puzzle instance is not well-formed for its mode."""


class Mode(Enum):
    OKU = "oku"
    TOMOKU = "tomoku"
    LAZY_PAVER = "lazy-paver"
    CONSULTANT = "consultant"
    NOKU = "noku"


@dataclass(frozen=True)
class Projections:
    """Per-row and per-column (v, h, m) triples: squares covered by vertical
    dominoes, horizontal dominoes, and monominoes."""

    rows: tuple[tuple[int, int, int], ...]
    cols: tuple[tuple[int, int, int], ...]

    def is_consistent(self) -> bool:
        """Necessary conditions for an r x c rectangle instance."""
        c, r = len(self.cols), len(self.rows)
        for v, h, m in self.rows:
            if v + h + m != c or h % 2:
                return False
        for v, h, m in self.cols:
            if v + h + m != r or v % 2:
                return False
        for i in range(3):
            if sum(t[i] for t in self.rows) != sum(t[i] for t in self.cols):
                return False
        return True


@dataclass(frozen=True)
class PieceBudget:
    max_monominoes: Optional[int] = None
    max_dominoes: Optional[int] = None


@dataclass(frozen=True)
class PuzzleSpec:
    mode: Mode
    region: Region
    given_tiles: tuple[Tile, ...] = ()
    projections: Optional[Projections] = None
    piece_budget: Optional[PieceBudget] = None
    id: str = ""
    title: str = ""
    difficulty: str = ""

    def validate(self) -> None:
        if self.mode is Mode.TOMOKU:
            if self.projections is None:
                raise MalformedPuzzleError("tomoku puzzles need projections")
            if not self.region.is_rectangle():
                raise MalformedPuzzleError("tomoku puzzles are played on rectangles")
            if len(self.projections.rows) != self.region.height or len(
                self.projections.cols
            ) != self.region.width:
                raise MalformedPuzzleError("projection triples do not match the grid")
        if self.mode is Mode.CONSULTANT and not self.given_tiles:
            raise MalformedPuzzleError("consultant puzzles need given tiles")
        if self.given_tiles:
            seen_cells: set[Cell] = set()
            for t in self.given_tiles:
                for c in t.cells():
                    if c not in self.region:
                        raise MalformedPuzzleError(f"given tile leaves the region at {c}")
                    if c in seen_cells:
                        raise MalformedPuzzleError(f"given tiles overlap at {c}")
                    seen_cells.add(c)
            if violations(self.region, self.given_tiles):
                raise MalformedPuzzleError("given tiles violate the tatami rule")


@dataclass(frozen=True)
class SolveOutcome:
    status: str  # "solutions" | "unsatisfiable" | "limit-reached"
    coverings: tuple[Covering, ...] = ()

    @property
    def satisfiable(self) -> bool:
        return bool(self.coverings)


@dataclass
class SolveStats:
    nodes: int = 0
    backtracks: int = 0  # retractions of tiles placed by choice


def projections(covering: Covering) -> Projections:
    """Compute (v, h, m) triples for a complete rectangular covering."""
    region = covering.region
    if not region.is_rectangle():
        raise NonRectangularError("projections are defined on rectangles")
    rows = [[0, 0, 0] for _ in range(region.height)]
    cols = [[0, 0, 0] for _ in range(region.width)]
    index = {TileKind.VDOMINO: 0, TileKind.HDOMINO: 1, TileKind.MONOMINO: 2}
    for t in covering.tiles.values():
        i = index[t.kind]
        for r, c in t.cells():
            rows[r][i] += 1
            cols[c][i] += 1
    return Projections(
        tuple(tuple(x) for x in rows), tuple(tuple(x) for x in cols)
    )


def tomoku_from_covering(covering: Covering, **meta: str) -> PuzzleSpec:
    """Build the Tomoku instance whose projections come from the covering.
    The source covering is one of its solutions."""
    if not covering.is_complete():
        raise MalformedPuzzleError("tomoku instances come from complete coverings")
    return PuzzleSpec(
        mode=Mode.TOMOKU,
        region=covering.region,
        projections=projections(covering),
        **meta,
    )


# The engine ------------------------------------------------------------------

_KIND_INDEX = {TileKind.VDOMINO: 0, TileKind.HDOMINO: 1, TileKind.MONOMINO: 2}


class _Engine:
    """Depth-first search over the first uncovered cell in row-major order,
    branching V, H, M; forced-move propagation after every choice."""

    def __init__(self, puzzle: PuzzleSpec, use_propagation: bool = True,
                 rng: Optional[random.Random] = None):
        if puzzle.mode is Mode.NOKU:
            raise MalformedPuzzleError("noku is adversarial; see the game engine")
        puzzle.validate()
        self.puzzle = puzzle
        self.use_propagation = use_propagation
        self.rng = rng
        self.board = Board(puzzle.region)
        self.stats = SolveStats()
        self.allowed = (
            (TileKind.VDOMINO, TileKind.HDOMINO)
            if puzzle.mode is Mode.LAZY_PAVER
            else KIND_ORDER
        )
        self.budget = puzzle.piece_budget or PieceBudget()
        self.mono_used = 0
        self.domino_used = 0
        self.given_tags: dict[int, Optional[str]] = {}
        tomoku = puzzle.mode is Mode.TOMOKU and puzzle.projections is not None
        self.row_target = list(puzzle.projections.rows) if tomoku else None
        self.col_target = list(puzzle.projections.cols) if tomoku else None
        self.row_have = [[0, 0, 0] for _ in range(puzzle.region.height)] if tomoku else None
        self.col_have = [[0, 0, 0] for _ in range(puzzle.region.width)] if tomoku else None
        for t in sorted(puzzle.given_tiles, key=lambda t: t.id):
            if not self.board.fits(t.kind, t.anchor):
                raise MalformedPuzzleError(f"given tile cannot be placed: {t}")
            tid = self._place(t.kind, t.anchor)
            self.given_tags[tid] = t.color_tag

    # -- bookkeeping ------------------------------------------------------

    def _place(self, kind: TileKind, anchor: Cell) -> int:
        tid = self.board.place(kind, anchor)
        if kind is TileKind.MONOMINO:
            self.mono_used += 1
        else:
            self.domino_used += 1
        if self.row_have is not None:
            i = _KIND_INDEX[kind]
            for r, c in kind.cells(anchor):
                self.row_have[r][i] += 1
                self.col_have[c][i] += 1
        return tid

    def _unplace(self, tid: int) -> None:
        kind, anchor = self.board.tiles[tid]
        if kind is TileKind.MONOMINO:
            self.mono_used -= 1
        else:
            self.domino_used -= 1
        if self.row_have is not None:
            i = _KIND_INDEX[kind]
            for r, c in kind.cells(anchor):
                self.row_have[r][i] -= 1
                self.col_have[c][i] -= 1
        self.board.unplace(tid)

    def _fits_targets(self, kind: TileKind, anchor: Cell) -> bool:
        """Cheap pre-placement check against the projection targets, so the
        search never commits to a placement the row/column tallies already
        rule out.  Rejections here are not backtracks."""
        if self.row_have is None:
            return True
        i = _KIND_INDEX[kind]
        for r, c in kind.cells(anchor):
            if self.row_have[r][i] >= self.row_target[r][i]:
                return False
            if self.col_have[c][i] >= self.col_target[c][i]:
                return False
        return True

    def _within_limits(self) -> bool:
        if self.budget.max_monominoes is not None and self.mono_used > self.budget.max_monominoes:
            return False
        if self.budget.max_dominoes is not None and self.domino_used > self.budget.max_dominoes:
            return False
        if self.row_have is not None:
            for have, target in zip(self.row_have, self.row_target):
                if any(have[i] > target[i] for i in range(3)):
                    return False
            for have, target in zip(self.col_have, self.col_target):
                if any(have[i] > target[i] for i in range(3)):
                    return False
        return True

    def _accepts(self) -> bool:
        if self.row_have is not None:
            for have, target in zip(self.row_have, self.row_target):
                if tuple(have) != tuple(target):
                    return False
            for have, target in zip(self.col_have, self.col_target):
                if tuple(have) != tuple(target):
                    return False
        return True

    def _snapshot(self) -> Covering:
        return self.board.to_covering(color_tags=self.given_tags)

    # -- search -----------------------------------------------------------

    def solutions(self) -> Iterator[Covering]:
        if self.puzzle.mode is Mode.TOMOKU and not self.puzzle.projections.is_consistent():
            return
        yield from self._dfs()

    def _dfs(self) -> Iterator[Covering]:
        self.stats.nodes += 1
        cell = self.board.first_uncovered()
        if cell is None:
            if self._accepts():
                yield self._snapshot()
            return
        kinds = list(self.allowed)
        if self.rng is not None:
            self.rng.shuffle(kinds)
        for kind in kinds:
            if kind is TileKind.MONOMINO and self.budget.max_monominoes is not None \
                    and self.mono_used >= self.budget.max_monominoes:
                continue
            if kind is not TileKind.MONOMINO and self.budget.max_dominoes is not None \
                    and self.domino_used >= self.budget.max_dominoes:
                continue
            if not self._fits_targets(kind, cell):
                continue
            if not self.board.fits(kind, cell):
                continue
            tid = self._place(kind, cell)
            ok = self._within_limits()
            forced: list[int] = []
            if ok and self.use_propagation:
                result = _propagate(self.board)
                if isinstance(result, Contradiction):
                    ok = False
                else:
                    # Re-register propagation placements through our books.
                    for ftid, _ in result:
                        self.board.unplace(ftid)
                    for _, ded in result:
                        forced.append(self._place(ded.kind, ded.anchor))
                    ok = self._within_limits()
            if ok:
                yield from self._dfs()
            for ftid in reversed(forced):
                self._unplace(ftid)
            self._unplace(tid)
            self.stats.backtracks += 1


def solve(
    puzzle: PuzzleSpec,
    limit: Optional[int] = 1,
    use_propagation: bool = True,
    stats: Optional[SolveStats] = None,
) -> SolveOutcome:
    """Find up to `limit` solutions (all of them when limit is None), in the
    deterministic order of the frozen search strategy."""
    if limit is not None and limit < 1:
        raise ValueError("limit must be at least 1")
    engine = _Engine(puzzle, use_propagation=use_propagation)
    found: list[Covering] = []
    exhausted = True
    for cov in engine.solutions():
        found.append(cov)
        if limit is not None and len(found) >= limit:
            # When the limit is hit we cannot know whether more exist.
            exhausted = False
            break
    if stats is not None:
        stats.nodes = engine.stats.nodes
        # Retractions after the final solution are bookkeeping, not search.
        stats.backtracks = engine.stats.backtracks
    if not found:
        return SolveOutcome("unsatisfiable")
    if not exhausted:
        return SolveOutcome("limit-reached", tuple(found))
    return SolveOutcome("solutions", tuple(found))


def solve_all(puzzle: PuzzleSpec, use_propagation: bool = True) -> SolveOutcome:
    return solve(puzzle, limit=None, use_propagation=use_propagation)


def solve_with_backtrack_count(puzzle: PuzzleSpec) -> tuple[SolveOutcome, int]:
    """Solve for the first solution, counting retractions of choice tiles made
    before that solution is reached (the difficulty metric)."""
    engine = _Engine(puzzle)
    for cov in engine.solutions():
        return SolveOutcome("limit-reached", (cov,)), engine.stats.backtracks
    return SolveOutcome("unsatisfiable"), engine.stats.backtracks


def random_covering(region: Region, seed: int) -> Covering:
    """A pseudorandom complete tatami covering, via randomized branch order."""
    rng = random.Random(seed)
    engine = _Engine(PuzzleSpec(Mode.OKU, region), rng=rng)
    for cov in engine.solutions():
        return cov
    raise MalformedPuzzleError("region admits no tatami covering")
