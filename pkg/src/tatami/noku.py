"""Noku: the two-player adversarial placement game.  Players alternate
placing tiles under the no-four-meet rule; a player with no legal move loses
(normal play).

The ruleset assigns each player their own allowed tile kinds.  The default —
player 1 places vertical dominoes and monominoes, player 2 horizontal
dominoes and monominoes — is the unique convention among those tried by
`calibrate_ruleset` and its per-player extension that yields the published
winners (player 2 on 2x6, player 1 on 4x3 and 4x4).  See
docs/noku-census.md for the calibration table.
"""
from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass, replace
from typing import Optional

from .model import Cell, Covering, Region, Tile, TileKind, violations
from .search import KIND_ORDER, Board


class BudgetExceededError(RuntimeError):
    """The position-count budget was exhausted before the solve finished."""


@dataclass(frozen=True)
class Ruleset:
    """Allowed tile kinds per player."""

    player1_kinds: tuple[TileKind, ...] = (TileKind.VDOMINO, TileKind.MONOMINO)
    player2_kinds: tuple[TileKind, ...] = (TileKind.HDOMINO, TileKind.MONOMINO)

    def __post_init__(self):
        for attr in ("player1_kinds", "player2_kinds"):
            kinds = getattr(self, attr)
            if not kinds:
                raise ValueError("each player needs at least one tile kind")
            object.__setattr__(self, attr, tuple(k for k in KIND_ORDER if k in kinds))

    @classmethod
    def shared(cls, kinds: tuple[TileKind, ...]) -> "Ruleset":
        """Both players place the same kinds."""
        return cls(tuple(kinds), tuple(kinds))

    def kinds_for(self, player: int) -> tuple[TileKind, ...]:
        return self.player1_kinds if player == 1 else self.player2_kinds


@dataclass(frozen=True)
class Move:
    kind: TileKind
    anchor: Cell


@dataclass(frozen=True)
class GameState:
    region: Region
    tiles: tuple[Tile, ...] = ()
    to_move: int = 1  # player 1 or 2
    ruleset: Ruleset = Ruleset()

    def __post_init__(self):
        if self.to_move not in (1, 2):
            raise ValueError("to_move is player 1 or 2")
        if violations(self.region, self.tiles):
            raise ValueError("position violates the tatami rule")

    def covering(self) -> Covering:
        return Covering(self.region, self.tiles)

    def canonical(self):
        return (self.covering().canonical(), self.to_move)

    def apply(self, move: Move) -> "GameState":
        board = Board.from_covering(self.covering())
        if move.kind not in self.ruleset.kinds_for(self.to_move) or not board.fits(
            move.kind, move.anchor
        ):
            raise ValueError(f"illegal move: {move}")
        next_id = max((t.id for t in self.tiles), default=-1) + 1
        tile = Tile(next_id, move.kind, move.anchor)
        return replace(self, tiles=self.tiles + (tile,), to_move=3 - self.to_move)


def _board_moves(board: Board, kinds: tuple[TileKind, ...]) -> list[Move]:
    return [
        Move(kind, anchor)
        for kind in kinds
        for anchor in board.cell_order
        if board.fits(kind, anchor)
    ]


def legal_moves(state: GameState) -> list[Move]:
    """All legal placements for the player to move, kinds in canonical order,
    anchors row-major."""
    board = Board.from_covering(state.covering())
    return _board_moves(board, state.ruleset.kinds_for(state.to_move))


@dataclass(frozen=True)
class GameVerdict:
    winner: int  # player who wins with best play
    best_move: Optional[Move]  # a winning move for the player to move, if any
    positions_examined: int


def solve_noku(state: GameState, budget: Optional[int] = None) -> GameVerdict:
    """Who wins from `state` with best play (normal play: no move loses).

    `budget` caps the number of distinct positions examined; exceeding it
    raises BudgetExceededError.
    """
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 100_000))
    ruleset = state.ruleset
    board = Board.from_covering(state.covering())
    memo: dict[tuple, bool] = {}  # (canonical, player) -> mover wins?
    examined = 0

    def mover_wins(player: int) -> bool:
        nonlocal examined
        key = (board.canonical(), player)
        if key in memo:
            return memo[key]
        examined += 1
        if budget is not None and examined > budget:
            raise BudgetExceededError(f"examined more than {budget} positions")
        result = False
        for move in _board_moves(board, ruleset.kinds_for(player)):
            tid = board.place(move.kind, move.anchor)
            wins = not mover_wins(3 - player)
            board.unplace(tid)
            if wins:
                result = True
                break
        memo[key] = result
        return result

    best: Optional[Move] = None
    if mover_wins(state.to_move):
        winner = state.to_move
        for move in _board_moves(board, ruleset.kinds_for(state.to_move)):
            tid = board.place(move.kind, move.anchor)
            wins = not mover_wins(3 - state.to_move)
            board.unplace(tid)
            if wins:
                best = move
                break
    else:
        winner = 3 - state.to_move
    return GameVerdict(winner, best, examined)


@dataclass(frozen=True)
class GameTreeStats:
    nodes: int  # positions in the full game tree, repeats counted
    distinct: int  # distinct (position, player) pairs
    max_depth: int
    leaves: int  # terminal positions, repeats counted


def game_tree_stats(state: GameState) -> GameTreeStats:
    """Size of the full unpruned game tree from `state`.

    Identical positions reached along different move orders are counted every
    time (the tree, not the graph); their subtree sizes are memoized only for
    speed, which never changes the totals."""
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 100_000))
    ruleset = state.ruleset
    board = Board.from_covering(state.covering())
    memo: dict[tuple, tuple[int, int, int]] = {}  # key -> (nodes, depth, leaves)

    def walk(player: int) -> tuple[int, int, int]:
        key = (board.canonical(), player)
        if key in memo:
            return memo[key]
        moves = _board_moves(board, ruleset.kinds_for(player))
        if not moves:
            result = (1, 0, 1)
        else:
            nodes, depth, leaves = 1, 0, 0
            for move in moves:
                tid = board.place(move.kind, move.anchor)
                n, d, l = walk(3 - player)
                board.unplace(tid)
                nodes += n
                depth = max(depth, d + 1)
                leaves += l
            result = (nodes, depth, leaves)
        memo[key] = result
        return result

    nodes, depth, leaves = walk(state.to_move)
    return GameTreeStats(nodes, len(memo), depth, leaves)


def calibrate_ruleset(
    region: Region, target_nodes: int, per_player: bool = False
) -> list[tuple[Ruleset, bool]]:
    """Census every candidate ruleset's game tree from the empty position and
    return the (ruleset, count_root) configurations hitting `target_nodes`.
    `count_root` False excludes the starting position from the tally.

    The default space is shared-kind rulesets (both players place the same
    subset of kinds); `per_player` widens it to independent kind assignments.
    An empty result means no candidate convention matches the target.
    """
    subsets = [
        kinds
        for n in (1, 2, 3)
        for kinds in itertools.combinations(KIND_ORDER, n)
    ]
    if per_player:
        candidates = [Ruleset(a, b) for a in subsets for b in subsets]
    else:
        candidates = [Ruleset.shared(kinds) for kinds in subsets]
    matches = []
    for ruleset in candidates:
        stats = game_tree_stats(GameState(region, ruleset=ruleset))
        for count_root in (True, False):
            total = stats.nodes if count_root else stats.nodes - 1
            if total == target_nodes:
                matches.append((ruleset, count_root))
    return matches
