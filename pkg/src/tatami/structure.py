"""Structure theory of tatami coverings: forced-move propagation, ray and
feature classification, and boundary signatures.

Feature catalog (local patterns, frozen here):

* vortex   -- four dominoes wound around a central monomino in a chiral
              pinwheel; the mirror image has the opposite chirality.
* bidimer  -- two parallel dominoes sharing an entire long edge.
* vee      -- two perpendicular dominoes sharing a cell edge, offset so the
              pair already forces further tiles on an otherwise empty board.
* loner    -- a monomino flanked by dominoes of both orientations (and not a
              vortex center); monominoes embedded in bond brickwork are not
              features.

Rays are the chains of tiles forced from the features; the brick-laying bond
pattern fills everything else.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .model import Cell, Covering, Region, Tile, TileKind, Vertex, violations
from .search import Board, Contradiction, Deduction, forced_moves as _board_forced
from .search import propagate as _board_propagate


class IncompleteCoveringError(ValueError):
    """Raised when an operation requires a complete covering."""


class NonRectangularError(ValueError):
    """Raised when an operation requires a rectangular region."""


@dataclass(frozen=True)
class PropagationResult:
    covering: Covering
    trace: tuple[Deduction, ...]


@dataclass(frozen=True)
class BoundarySignature:
    """Canonical encoding of the tiles touching the rectangle's boundary."""

    entries: tuple[tuple[str, int, int], ...]


@dataclass
class FeatureReport:
    loners: list[Tile] = field(default_factory=list)
    vees: list[tuple[Tile, Tile]] = field(default_factory=list)
    bidimers: list[tuple[Tile, Tile]] = field(default_factory=list)
    vortices: list[tuple[tuple[Tile, Tile, Tile, Tile], str]] = field(
        default_factory=list
    )
    vortex_centers: list[Tile] = field(default_factory=list)
    rays: list[list[Tile]] = field(default_factory=list)
    bond_cells: set[Cell] = field(default_factory=set)

    def feature_tiles(self) -> set[int]:
        ids = {t.id for t in self.loners}
        ids.update(t.id for t in self.vortex_centers)
        for pair in self.vees + self.bidimers:
            ids.update(t.id for t in pair)
        for quad, _ in self.vortices:
            ids.update(t.id for t in quad)
        return ids

    def ray_tiles(self) -> set[int]:
        return {t.id for ray in self.rays for t in ray}


def forced_moves(covering: Covering) -> "list[Deduction] | Contradiction":
    """One round of forced deductions (or a contradiction) on a covering."""
    return _board_forced(Board.from_covering(covering))


def propagate(covering: Covering) -> "PropagationResult | Contradiction":
    """Apply forced moves to fixpoint.  Deterministic: deductions are applied
    in row-major vertex order per round; confluence makes the order
    semantically irrelevant."""
    board = Board.from_covering(covering)
    result = _board_propagate(board)
    if isinstance(result, Contradiction):
        return result
    new = board.to_covering()
    # Preserve the original tiles (ids and tags) and append the forced ones.
    merged = dict(covering.tiles)
    next_id = max(merged, default=-1) + 1
    trace = []
    for _, ded in result:
        merged[next_id] = Tile(next_id, ded.kind, ded.anchor)
        trace.append(ded)
        next_id += 1
    del new
    return PropagationResult(
        Covering(covering.region, merged.values()), tuple(trace)
    )


# Feature classification ------------------------------------------------------


def _aligned_pairs(covering: Covering) -> list[tuple[Tile, Tile]]:
    pairs = []
    tiles = sorted(covering.tiles.values(), key=lambda t: t.anchor)
    for i, a in enumerate(tiles):
        if a.kind is TileKind.MONOMINO:
            continue
        for b in tiles[i + 1 :]:
            if b.kind is not a.kind:
                continue
            (r1, c1), (r2, c2) = a.anchor, b.anchor
            if a.kind is TileKind.HDOMINO and c1 == c2 and abs(r1 - r2) == 1:
                pairs.append((a, b))
            elif a.kind is TileKind.VDOMINO and r1 == r2 and abs(c1 - c2) == 1:
                pairs.append((a, b))
    return pairs


def _vortex_at(covering: Covering, center: Tile) -> Optional[tuple[tuple[Tile, ...], str]]:
    r, c = center.anchor
    up = covering.tile_at((r - 1, c))
    right = covering.tile_at((r, c + 1))
    down = covering.tile_at((r + 1, c))
    left = covering.tile_at((r, c - 1))
    arms = (up, right, down, left)
    if any(a is None for a in arms) or len({a.id for a in arms}) != 4:
        return None
    cw = (
        up.kind is TileKind.HDOMINO and up.anchor == (r - 1, c - 1)
        and right.kind is TileKind.VDOMINO and right.anchor == (r - 1, c + 1)
        and down.kind is TileKind.HDOMINO and down.anchor == (r + 1, c)
        and left.kind is TileKind.VDOMINO and left.anchor == (r, c - 1)
    )
    ccw = (
        up.kind is TileKind.HDOMINO and up.anchor == (r - 1, c)
        and right.kind is TileKind.VDOMINO and right.anchor == (r, c + 1)
        and down.kind is TileKind.HDOMINO and down.anchor == (r + 1, c - 1)
        and left.kind is TileKind.VDOMINO and left.anchor == (r - 1, c - 1)
    )
    if cw:
        return arms, "cw"
    if ccw:
        return arms, "ccw"
    return None


def _neighbor_tiles(covering: Covering, tile: Tile) -> list[Tile]:
    out = {}
    for (r, c) in tile.cells():
        for nb in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            t = covering.tile_at(nb)
            if t is not None and t.id != tile.id:
                out[t.id] = t
    return list(out.values())


def _is_forcing_pair(region: Region, a: Tile, b: Tile) -> bool:
    """True when the two tiles alone already force moves on an empty board."""
    board = Board(region)
    board.place(a.kind, a.anchor)
    board.place(b.kind, b.anchor)
    result = _board_forced(board)
    return isinstance(result, Contradiction) or bool(result)


def _perpendicular_edge_sharing(a: Tile, b: Tile) -> bool:
    if TileKind.MONOMINO in (a.kind, b.kind) or a.kind is b.kind:
        return False
    acells = set(a.cells())
    for (r, c) in b.cells():
        if {(r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)} & acells:
            return True
    return False


def classify_features(covering: Covering) -> FeatureReport:
    """Decompose a complete covering into features, their rays, and bond."""
    if not covering.is_complete():
        raise IncompleteCoveringError("feature classification needs a complete covering")
    if violations(covering.region, covering.tiles.values()):
        raise ValueError("covering violates the tatami rule")

    report = FeatureReport()
    in_feature: set[int] = set()

    monominoes = sorted(
        (t for t in covering.tiles.values() if t.kind is TileKind.MONOMINO),
        key=lambda t: t.anchor,
    )
    vortex_centers: set[int] = set()
    for mono in monominoes:
        found = _vortex_at(covering, mono)
        if found:
            arms, chirality = found
            report.vortices.append((tuple(arms), chirality))
            report.vortex_centers.append(mono)
            vortex_centers.add(mono.id)
            in_feature.update(a.id for a in arms)
            in_feature.add(mono.id)

    for a, b in _aligned_pairs(covering):
        report.bidimers.append((a, b))
        in_feature.update((a.id, b.id))

    for mono in monominoes:
        if mono.id in vortex_centers:
            continue
        kinds = {t.kind for t in _neighbor_tiles(covering, mono)}
        if TileKind.HDOMINO in kinds and TileKind.VDOMINO in kinds:
            report.loners.append(mono)
            in_feature.add(mono.id)

    # Propagate from the features (plus every monomino, which anchors the
    # brickwork) and attribute each forced tile to the features it descends
    # from.  What never becomes forced is either a vee source or bond.
    def propagate_and_attribute() -> None:
        board = Board(covering.region)
        placed: dict[tuple[TileKind, Cell], int] = {}
        sources: dict[int, set[int]] = {}
        feature_key: dict[int, int] = {}
        for idx, t in enumerate(feature_seq):
            feature_key[t.id] = idx

        def seed(tile: Tile) -> None:
            tid = board.place(tile.kind, tile.anchor)
            placed[(tile.kind, tile.anchor)] = tid
            src = set()
            if tile.id in feature_key:
                src.add(feature_key[tile.id])
            sources[tid] = src

        for t in sorted(covering.tiles.values(), key=lambda t: t.anchor):
            if t.id in in_feature or t.kind is TileKind.MONOMINO:
                seed(t)
        ray_order: dict[int, list[Tile]] = {}
        while True:
            result = _board_forced(board)
            if isinstance(result, Contradiction) or not result:
                break
            progress = False
            for ded in result:
                key = (ded.kind, ded.anchor)
                if key in placed:
                    continue
                if not board.fits(ded.kind, ded.anchor):
                    continue
                parents = {
                    board.grid[c]
                    for c in _incident(ded.cause)
                    if c in board.grid
                }
                tid = board.place(ded.kind, ded.anchor)
                placed[key] = tid
                src = set()
                for p in parents:
                    src |= sources.get(p, set())
                sources[tid] = src
                actual = _tile_by_placement(covering, ded.kind, ded.anchor)
                if actual is not None:
                    for f in sorted(src):
                        ray_order.setdefault(f, []).append(actual)
                progress = True
            if not progress:
                break
        report.rays = [ray_order[f] for f in sorted(ray_order)]
        attributed = set(in_feature)
        for ray in report.rays:
            attributed.update(t.id for t in ray)
        # Forced tiles that descend from no feature are structural filler.
        for key, tid in placed.items():
            actual = _tile_by_placement(covering, *key)
            if actual is not None and sources.get(tid):
                attributed.add(actual.id)
        leftover[:] = [
            t for t in sorted(covering.tiles.values(), key=lambda t: t.anchor)
            if t.id not in attributed
        ]

    leftover: list[Tile] = []
    while True:
        feature_seq = [t for t in covering.tiles.values() if t.id in in_feature]
        feature_seq.sort(key=lambda t: t.anchor)
        propagate_and_attribute()
        new_vee = None
        for i, a in enumerate(leftover):
            for b in leftover[i + 1 :]:
                if _perpendicular_edge_sharing(a, b) and _is_forcing_pair(
                    covering.region, a, b
                ):
                    new_vee = (a, b)
                    break
            if new_vee:
                break
        if not new_vee:
            break
        report.vees.append(new_vee)
        in_feature.update((new_vee[0].id, new_vee[1].id))

    report.bond_cells = {c for t in leftover for c in t.cells()}
    return report


def _incident(vertex: Vertex) -> tuple[Cell, Cell, Cell, Cell]:
    r, c = vertex
    return ((r - 1, c - 1), (r - 1, c), (r, c - 1), (r, c))


def _tile_by_placement(covering: Covering, kind: TileKind, anchor: Cell) -> Optional[Tile]:
    t = covering.tile_at(anchor)
    if t is not None and t.kind is kind and t.anchor == anchor:
        return t
    return None


# Boundary signatures ----------------------------------------------------------


def boundary_signature(covering: Covering) -> BoundarySignature:
    """Canonical encoding of all tiles spanning at least one boundary cell of
    a rectangular region.  Injective over complete coverings of any fixed
    rectangle (tested exhaustively for small sizes)."""
    region = covering.region
    if not region.is_rectangle():
        raise NonRectangularError("boundary signatures are defined for rectangles")
    if not covering.is_complete():
        raise IncompleteCoveringError("boundary signatures need a complete covering")
    h, w = region.height, region.width
    entries = []
    for t in covering.tiles.values():
        if any(r in (0, h - 1) or c in (0, w - 1) for r, c in t.cells()):
            entries.append((t.kind.value, t.anchor[0], t.anchor[1]))
    return BoundarySignature(tuple(sorted(entries)))
