"""Board geometry, tiles, coverings, and the no-four-tiles-meet placement law.

Coordinates are row-major with the origin at the top left.  A vertex (r, c)
is the lattice point at the top-left corner of cell (r, c); its four
incident cells are (r-1, c-1), (r-1, c), (r, c-1) and (r, c).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Optional

Cell = tuple[int, int]
Vertex = tuple[int, int]


class EmptyRegionError(ValueError):
    """Raised when a region description contains no cells."""


class UnknownTileError(KeyError):
    """Raised when a tile id is not present in a covering."""


class IllegalPlacementError(ValueError):
    """Raised by Covering.place when the placement verdict is not legal."""

    def __init__(self, verdict: "PlacementVerdict"):
        super().__init__(f"illegal placement: {verdict}")
        self.verdict = verdict


def incident_cells(vertex: Vertex) -> tuple[Cell, Cell, Cell, Cell]:
    r, c = vertex
    return ((r - 1, c - 1), (r - 1, c), (r, c - 1), (r, c))


def cell_vertices(cell: Cell) -> tuple[Vertex, Vertex, Vertex, Vertex]:
    r, c = cell
    return ((r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1))


class TileKind(Enum):
    MONOMINO = "M"
    HDOMINO = "H"
    VDOMINO = "V"

    def cells(self, anchor: Cell) -> tuple[Cell, ...]:
        r, c = anchor
        if self is TileKind.MONOMINO:
            return ((r, c),)
        if self is TileKind.HDOMINO:
            return ((r, c), (r, c + 1))
        return ((r, c), (r + 1, c))


@dataclass(frozen=True)
class Tile:
    id: int
    kind: TileKind
    anchor: Cell
    color_tag: Optional[str] = None

    def cells(self) -> tuple[Cell, ...]:
        return self.kind.cells(self.anchor)


class Region:
    """A finite rectilinear set of unit cells with O(1) membership."""

    __slots__ = ("cells", "_hash", "min_row", "min_col", "max_row", "max_col")

    def __init__(self, cells: Iterable[Cell]):
        cellset = frozenset((int(r), int(c)) for r, c in cells)
        if not cellset:
            raise EmptyRegionError("a region must contain at least one cell")
        for r, c in cellset:
            if r < 0 or c < 0:
                raise ValueError(f"negative cell coordinate: {(r, c)}")
        self.cells = cellset
        self._hash = hash(cellset)
        rows = [r for r, _ in cellset]
        cols = [c for _, c in cellset]
        self.min_row, self.max_row = min(rows), max(rows)
        self.min_col, self.max_col = min(cols), max(cols)

    @classmethod
    def rectangle(cls, rows: int, cols: int) -> "Region":
        if rows < 1 or cols < 1:
            raise EmptyRegionError("rectangle dimensions must be positive")
        return cls((r, c) for r in range(rows) for c in range(cols))

    @property
    def height(self) -> int:
        return self.max_row + 1

    @property
    def width(self) -> int:
        return self.max_col + 1

    @property
    def area(self) -> int:
        return len(self.cells)

    def is_rectangle(self) -> bool:
        return self.area == (self.max_row - self.min_row + 1) * (
            self.max_col - self.min_col + 1
        )

    def __contains__(self, cell: Cell) -> bool:
        return cell in self.cells

    def __iter__(self) -> Iterator[Cell]:
        return iter(sorted(self.cells))

    def __len__(self) -> int:
        return len(self.cells)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Region) and self.cells == other.cells

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Region({self.height}x{self.width}, {self.area} cells)"

    def interior_vertices(self) -> list[Vertex]:
        """Vertices whose four incident cells are all in the region."""
        out = []
        for r in range(self.min_row + 1, self.max_row + 1):
            for c in range(self.min_col + 1, self.max_col + 1):
                if all(cell in self.cells for cell in incident_cells((r, c))):
                    out.append((r, c))
        return out

    def to_ascii(self) -> str:
        lines = []
        for r in range(self.height):
            lines.append(
                "".join("#" if (r, c) in self.cells else "." for c in range(self.width))
            )
        return "\n".join(lines)


def region_from_ascii(text: str) -> Region:
    """Parse a region from a block of text: '#' cells are in, '.'/' ' are holes.

    Short lines are padded with holes.  The result is re-anchored so the
    bounding box starts at (0, 0).
    """
    cells = []
    for r, line in enumerate(text.splitlines()):
        for c, ch in enumerate(line):
            if ch == "#":
                cells.append((r, c))
    if not cells:
        raise EmptyRegionError("region text contains no '#' cells")
    min_r = min(r for r, _ in cells)
    min_c = min(c for _, c in cells)
    return Region((r - min_r, c - min_c) for r, c in cells)


# Placement verdicts ---------------------------------------------------------


@dataclass(frozen=True)
class Legal:
    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class OutOfRegion:
    cells: tuple[Cell, ...]

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class Overlap:
    tile_ids: tuple[int, ...]

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class TatamiBlocked:
    vertices: tuple[Vertex, ...]

    def __bool__(self) -> bool:
        return False


PlacementVerdict = Legal | OutOfRegion | Overlap | TatamiBlocked

LEGAL = Legal()


class Covering:
    """An immutable set of disjoint tiles on a region, satisfying the rule
    that no four tiles meet at any vertex.  Mutators return new coverings."""

    __slots__ = ("region", "tiles", "cell_map", "_next_id")

    def __init__(
        self,
        region: Region,
        tiles: Iterable[Tile] = (),
        _next_id: Optional[int] = None,
    ):
        self.region = region
        tile_map: dict[int, Tile] = {}
        cell_map: dict[Cell, int] = {}
        for t in tiles:
            if t.id in tile_map:
                raise ValueError(f"duplicate tile id {t.id}")
            tile_map[t.id] = t
            for cell in t.cells():
                if cell not in region:
                    raise ValueError(f"tile {t} leaves the region at {cell}")
                if cell in cell_map:
                    raise ValueError(f"tiles overlap at {cell}")
                cell_map[cell] = t.id
        self.tiles = tile_map
        self.cell_map = cell_map
        bad = violations(region, tile_map.values())
        if bad:
            raise ValueError(f"four tiles meet at {bad[0]}")
        if _next_id is None:
            _next_id = max(tile_map, default=-1) + 1
        self._next_id = _next_id

    # -- queries --------------------------------------------------------

    def tile_at(self, cell: Cell) -> Optional[Tile]:
        tid = self.cell_map.get(cell)
        return None if tid is None else self.tiles[tid]

    def is_complete(self) -> bool:
        return len(self.cell_map) == self.region.area

    def canonical(self) -> tuple[tuple[str, int, int], ...]:
        """Id-independent canonical form: sorted (kind, row, col) triples."""
        return tuple(
            sorted((t.kind.value, t.anchor[0], t.anchor[1]) for t in self.tiles.values())
        )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Covering)
            and self.region == other.region
            and self.canonical() == other.canonical()
        )

    def __hash__(self) -> int:
        return hash((self.region, self.canonical()))

    def __repr__(self) -> str:
        return f"Covering({self.region!r}, {len(self.tiles)} tiles)"

    # -- the placement law ------------------------------------------------

    def can_place(self, kind: TileKind, anchor: Cell) -> PlacementVerdict:
        """Verdict priority: OutOfRegion > Overlap > TatamiBlocked."""
        span = kind.cells(anchor)
        out = tuple(c for c in span if c not in self.region)
        if out:
            return OutOfRegion(out)
        overlapping = sorted({self.cell_map[c] for c in span if c in self.cell_map})
        if overlapping:
            return Overlap(tuple(overlapping))
        blocked = []
        seen: set[Vertex] = set()
        span_set = set(span)
        for cell in span:
            for v in cell_vertices(cell):
                if v in seen:
                    continue
                seen.add(v)
                four = incident_cells(v)
                ids: set[int] = set()
                covered = True
                for c in four:
                    if c in span_set:
                        ids.add(-1)  # the hypothetical new tile
                    elif c in self.cell_map:
                        ids.add(self.cell_map[c])
                    elif c in self.region:
                        covered = False
                        break
                    else:
                        covered = False
                        break
                if covered and len(ids) == 4:
                    blocked.append(v)
        if blocked:
            return TatamiBlocked(tuple(sorted(blocked)))
        return LEGAL

    def place(
        self, kind: TileKind, anchor: Cell, color_tag: Optional[str] = None
    ) -> "Covering":
        verdict = self.can_place(kind, anchor)
        if not verdict:
            raise IllegalPlacementError(verdict)
        tile = Tile(self._next_id, kind, anchor, color_tag)
        return Covering(
            self.region,
            list(self.tiles.values()) + [tile],
            _next_id=self._next_id + 1,
        )

    def remove(self, tile_id: int) -> "Covering":
        if tile_id not in self.tiles:
            raise UnknownTileError(tile_id)
        return Covering(
            self.region,
            [t for t in self.tiles.values() if t.id != tile_id],
            _next_id=self._next_id,
        )


def violations(region: Region, tiles: Iterable[Tile]) -> list[Vertex]:
    """Vertices at which four distinct tiles meet.  Empty iff the covering
    obeys the tatami rule.  Tiles must lie in the region and be disjoint."""
    cell_map: dict[Cell, int] = {}
    for t in tiles:
        for cell in t.cells():
            cell_map[cell] = t.id
    bad = []
    for v in region.interior_vertices():
        four = incident_cells(v)
        if all(c in cell_map for c in four):
            if len({cell_map[c] for c in four}) == 4:
                bad.append(v)
    return bad
