"""Puzzle interchange format, ASCII/SVG renderers, and the Tomoku generator.

A puzzle document is human-readable structured text: a header line, `key:
value` fields, and a region block of `|`-prefixed rows.  Example:

    tatami-puzzle v1
    mode: tomoku
    id: demo
    region:
    | ####
    | ####
    row-projections: 2,2,0 0,2,2
    col-projections: 2,1,1 0,2,0 0,2,0 2,1,1
"""
from __future__ import annotations

import random
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from .model import Cell, Covering, Region, Tile, TileKind
from .solvers import (
    MalformedPuzzleError,
    Mode,
    PieceBudget,
    Projections,
    PuzzleSpec,
    projections as covering_projections,
    random_covering,
    solve_with_backtrack_count,
    tomoku_from_covering,
)

HEADER = "tatami-puzzle v1"
FORMAT_VERSION = 1


class PuzzleSyntaxError(ValueError):
    """The text is not in the puzzle document format."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class SchemaError(ValueError):
    """The document parses but a required field is missing or malformed."""


class GenerationBudgetError(RuntimeError):
    """Resampling failed to produce an instance within the attempt budget."""


@dataclass(frozen=True)
class PuzzleDocument:
    puzzle: PuzzleSpec
    solution: Optional[Covering] = None
    format_version: int = FORMAT_VERSION
    extras: tuple[tuple[str, str], ...] = ()  # unknown fields, order preserved


_KNOWN_FIELDS = (
    "mode",
    "id",
    "title",
    "difficulty",
    "region",
    "row-projections",
    "col-projections",
    "given-tiles",
    "max-monominoes",
    "max-dominoes",
    "solution",
)


def _parse_tiles(value: str, line: int) -> tuple[Tile, ...]:
    """Tiles as `K@r,c` tokens, e.g. `V@0,0 H@2,3 M@1,1`."""
    tiles = []
    for i, token in enumerate(value.split()):
        try:
            kind_s, anchor_s = token.split("@")
            kind = TileKind(kind_s)
            r, c = (int(x) for x in anchor_s.split(","))
        except ValueError:
            raise PuzzleSyntaxError(line, f"malformed tile token {token!r}")
        tiles.append(Tile(i, kind, (r, c)))
    return tuple(tiles)


def _render_tiles(tiles: Sequence[Tile]) -> str:
    ordered = sorted(tiles, key=lambda t: (t.anchor, t.kind.value))
    return " ".join(f"{t.kind.value}@{t.anchor[0]},{t.anchor[1]}" for t in ordered)


def _parse_triples(value: str, line: int) -> tuple[tuple[int, int, int], ...]:
    triples = []
    for token in value.split():
        parts = token.split(",")
        if len(parts) != 3:
            raise PuzzleSyntaxError(line, f"projection triple {token!r} is not v,h,m")
        try:
            triples.append(tuple(int(x) for x in parts))
        except ValueError:
            raise PuzzleSyntaxError(line, f"projection triple {token!r} is not numeric")
    return tuple(triples)


def _render_triples(triples: Sequence[tuple[int, int, int]]) -> str:
    return " ".join(f"{v},{h},{m}" for v, h, m in triples)


def parse_puzzle(text: str) -> PuzzleDocument:
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise PuzzleSyntaxError(1, f"expected header {HEADER!r}")
    fields: dict[str, str] = {}
    extras: list[tuple[str, str]] = []
    region_rows: list[str] = []
    i = 1
    while i < len(lines):
        raw = lines[i]
        line_no = i + 1
        i += 1
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if stripped.startswith("|"):
            raise PuzzleSyntaxError(line_no, "region row outside a region block")
        if ":" not in stripped:
            raise PuzzleSyntaxError(line_no, f"expected 'key: value', got {stripped!r}")
        key, _, value = stripped.partition(":")
        key, value = key.strip(), value.strip()
        if key == "region":
            if value:
                raise PuzzleSyntaxError(line_no, "region takes a block, not a value")
            while i < len(lines) and lines[i].lstrip().startswith("|"):
                region_rows.append(lines[i].lstrip()[1:].lstrip())
                i += 1
            if not region_rows:
                raise PuzzleSyntaxError(line_no, "empty region block")
            fields["region"] = "\n".join(region_rows)
        elif key in _KNOWN_FIELDS:
            if key in fields:
                raise PuzzleSyntaxError(line_no, f"duplicate field {key!r}")
            fields[key] = value
            fields.setdefault(f"__line_{key}", str(line_no))
        else:
            extras.append((key, value))
    return _document_from_fields(fields, tuple(extras))


def _field_line(fields: dict[str, str], key: str) -> int:
    return int(fields.get(f"__line_{key}", "0"))


def _document_from_fields(
    fields: dict[str, str], extras: tuple[tuple[str, str], ...]
) -> PuzzleDocument:
    if "mode" not in fields:
        raise SchemaError("missing field: mode")
    try:
        mode = Mode(fields["mode"])
    except ValueError:
        raise SchemaError(f"unknown mode {fields['mode']!r}")
    if "region" not in fields:
        raise SchemaError("missing field: region")
    region = Region(
        (r, c)
        for r, row in enumerate(fields["region"].split("\n"))
        for c, ch in enumerate(row)
        if ch == "#"
    )
    proj = None
    if "row-projections" in fields or "col-projections" in fields:
        if "row-projections" not in fields or "col-projections" not in fields:
            raise SchemaError("row-projections and col-projections go together")
        proj = Projections(
            _parse_triples(fields["row-projections"], _field_line(fields, "row-projections")),
            _parse_triples(fields["col-projections"], _field_line(fields, "col-projections")),
        )
    given = ()
    if "given-tiles" in fields:
        given = _parse_tiles(fields["given-tiles"], _field_line(fields, "given-tiles"))
    budget = None
    if "max-monominoes" in fields or "max-dominoes" in fields:
        try:
            budget = PieceBudget(
                int(fields["max-monominoes"]) if "max-monominoes" in fields else None,
                int(fields["max-dominoes"]) if "max-dominoes" in fields else None,
            )
        except ValueError:
            raise SchemaError("piece budgets must be integers")
    if mode is Mode.TOMOKU and proj is None:
        raise SchemaError("tomoku documents need row-projections and col-projections")
    if mode is Mode.CONSULTANT and not given:
        raise SchemaError("consultant documents need given-tiles")
    puzzle = PuzzleSpec(
        mode=mode,
        region=region,
        given_tiles=given,
        projections=proj,
        piece_budget=budget,
        id=fields.get("id", ""),
        title=fields.get("title", ""),
        difficulty=fields.get("difficulty", ""),
    )
    try:
        puzzle.validate()
    except MalformedPuzzleError as exc:
        raise SchemaError(str(exc))
    solution = None
    if "solution" in fields:
        tiles = _parse_tiles(fields["solution"], _field_line(fields, "solution"))
        solution = Covering(region, tiles)
    return PuzzleDocument(puzzle, solution, FORMAT_VERSION, extras)


def render_puzzle(doc: PuzzleDocument) -> str:
    p = doc.puzzle
    out = [HEADER, f"mode: {p.mode.value}"]
    if p.id:
        out.append(f"id: {p.id}")
    if p.title:
        out.append(f"title: {p.title}")
    if p.difficulty:
        out.append(f"difficulty: {p.difficulty}")
    out.append("region:")
    for row in p.region.to_ascii().split("\n"):
        out.append(f"| {row}")
    if p.projections is not None:
        out.append(f"row-projections: {_render_triples(p.projections.rows)}")
        out.append(f"col-projections: {_render_triples(p.projections.cols)}")
    if p.given_tiles:
        out.append(f"given-tiles: {_render_tiles(p.given_tiles)}")
    if p.piece_budget is not None:
        if p.piece_budget.max_monominoes is not None:
            out.append(f"max-monominoes: {p.piece_budget.max_monominoes}")
        if p.piece_budget.max_dominoes is not None:
            out.append(f"max-dominoes: {p.piece_budget.max_dominoes}")
    if doc.solution is not None:
        out.append(f"solution: {_render_tiles(doc.solution.tiles.values())}")
    for key, value in doc.extras:
        out.append(f"{key}: {value}")
    return "\n".join(out) + "\n"


# ASCII rendering ---------------------------------------------------------

_GLYPHS = {
    TileKind.MONOMINO: ("•",),
    TileKind.HDOMINO: ("<", ">"),
    TileKind.VDOMINO: ("^", "v"),
}


def render_ascii(covering: Covering) -> str:
    """One glyph per cell inside a bordered frame: monomino '•', horizontal
    domino '<>', vertical domino '^' over 'v', uncovered cell '.', cell
    outside the region ' '.  Output is height+2 lines."""
    region = covering.region
    h, w = region.height, region.width
    grid = [[" "] * w for _ in range(h)]
    for r, c in region:
        grid[r][c] = "."
    for tile in covering.tiles.values():
        for glyph, (r, c) in zip(_GLYPHS[tile.kind], tile.kind.cells(tile.anchor)):
            grid[r][c] = glyph
    border = "+" + "-" * w + "+"
    return "\n".join([border, *("|" + "".join(row) + "|" for row in grid), border])


# SVG rendering -----------------------------------------------------------

_CELL = 32
_PAD = 8
_TILE_INSET = 3
_KIND_FILL = {
    TileKind.MONOMINO: "#d9a441",
    TileKind.HDOMINO: "#6aa84f",
    TileKind.VDOMINO: "#4f81bd",
}


def _svg_board(parent: ET.Element, covering: Covering, ox: float, oy: float) -> None:
    region = covering.region
    for r, c in sorted(region.cells):
        ET.SubElement(
            parent,
            "rect",
            x=str(ox + c * _CELL),
            y=str(oy + r * _CELL),
            width=str(_CELL),
            height=str(_CELL),
            fill="#f4efe6",
            stroke="#b0a895",
        )
    for tile in sorted(covering.tiles.values(), key=lambda t: (t.anchor, t.kind.value)):
        cells = tile.kind.cells(tile.anchor)
        rows = [r for r, _ in cells]
        cols = [c for _, c in cells]
        attrs = {
            "x": str(ox + min(cols) * _CELL + _TILE_INSET),
            "y": str(oy + min(rows) * _CELL + _TILE_INSET),
            "width": str((max(cols) - min(cols) + 1) * _CELL - 2 * _TILE_INSET),
            "height": str((max(rows) - min(rows) + 1) * _CELL - 2 * _TILE_INSET),
            "rx": "6",
            "fill": _KIND_FILL[tile.kind],
            "stroke": "#3d3a33",
        }
        ET.SubElement(parent, "rect", **attrs)
        if tile.kind is TileKind.MONOMINO:
            r, c = tile.anchor
            ET.SubElement(
                parent,
                "circle",
                cx=str(ox + c * _CELL + _CELL / 2),
                cy=str(oy + r * _CELL + _CELL / 2),
                r="5",
                fill="#fff7e0",
            )


def render_svg(coverings: "Covering | Sequence[Covering]", columns: int = 4) -> str:
    """Deterministic SVG for one covering or a gallery grid of many."""
    gallery = list(coverings) if not isinstance(coverings, Covering) else [coverings]
    if not gallery:
        raise ValueError("nothing to render")
    panel_w = max(c.region.width for c in gallery) * _CELL
    panel_h = max(c.region.height for c in gallery) * _CELL
    cols = min(columns, len(gallery))
    rows = -(-len(gallery) // cols)
    width = cols * (panel_w + _PAD) + _PAD
    height = rows * (panel_h + _PAD) + _PAD
    root = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str(width),
        height=str(height),
        viewBox=f"0 0 {width} {height}",
    )
    ET.SubElement(
        root, "rect", x="0", y="0", width=str(width), height=str(height), fill="#ffffff"
    )
    for i, covering in enumerate(gallery):
        ox = _PAD + (i % cols) * (panel_w + _PAD)
        oy = _PAD + (i // cols) * (panel_h + _PAD)
        _svg_board(root, covering, ox, oy)
    return ET.tostring(root, encoding="unicode") + "\n"


# Tomoku generation ---------------------------------------------------------

NO_BACKTRACK = "no-backtrack"
ANY_DIFFICULTY = "any"
_MAX_ATTEMPTS = 200


def generate_tomoku(
    rows: int, cols: int, seed: int, difficulty: str = ANY_DIFFICULTY
) -> PuzzleDocument:
    """A solvable Tomoku instance with its reference solution.

    Seeds a pseudorandom complete covering and takes its projections; with
    difficulty `no-backtrack`, resamples until the fixed-strategy solver
    finds a solution with zero backtracks."""
    if difficulty not in (NO_BACKTRACK, ANY_DIFFICULTY):
        raise ValueError(f"unknown difficulty {difficulty!r}")
    region = Region.rectangle(rows, cols)
    rng = random.Random(seed)
    for attempt in range(_MAX_ATTEMPTS):
        covering = random_covering(region, rng.randrange(2**32))
        puzzle = tomoku_from_covering(
            covering,
            id=f"tomoku-{rows}x{cols}-s{seed}",
            title=f"Tomoku {rows}x{cols}",
            difficulty=difficulty,
        )
        outcome, backtracks = solve_with_backtrack_count(puzzle)
        if difficulty == NO_BACKTRACK and backtracks != 0:
            continue
        return PuzzleDocument(puzzle, solution=outcome.coverings[0])
    raise GenerationBudgetError(
        f"no {difficulty} {rows}x{cols} instance within {_MAX_ATTEMPTS} attempts"
    )
