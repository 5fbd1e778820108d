"""Exhaustive generation and counting of tatami coverings, plus the
closed-form count for square grids."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .model import Covering, Region, TileKind
from .search import KIND_ORDER, Board

MAX_ENUMERATION_AREA = 64


class RegionTooLargeError(ValueError):
    """Exhaustive enumeration is guarded to regions of area <= 64."""


class InconsistentConstraintsError(ValueError):
    """The requested tile counts cannot cover the region's area."""


@dataclass(frozen=True)
class EnumConstraints:
    monomino_count: Optional[int] = None
    vertical_domino_count: Optional[int] = None
    horizontal_domino_count: Optional[int] = None
    allow_monominoes: bool = True

    def validate(self, region: Region) -> None:
        area = region.area
        m, v, h = (
            self.monomino_count,
            self.vertical_domino_count,
            self.horizontal_domino_count,
        )
        for name, value in (("monomino", m), ("vertical", v), ("horizontal", h)):
            if value is not None and value < 0:
                raise InconsistentConstraintsError(f"negative {name} count")
        if not self.allow_monominoes and m not in (None, 0):
            raise InconsistentConstraintsError(
                "monominoes disallowed but a nonzero monomino count was requested"
            )
        m_eff = 0 if not self.allow_monominoes else m
        if m_eff is not None:
            if (area - m_eff) % 2 or area - m_eff < 0:
                raise InconsistentConstraintsError(
                    f"area {area} cannot be covered with exactly {m_eff} monominoes"
                )
            if v is not None and h is not None and m_eff + 2 * v + 2 * h != area:
                raise InconsistentConstraintsError("tile counts do not sum to the area")


def enumerate_coverings(
    region: Region, constraints: EnumConstraints = EnumConstraints()
) -> Iterator[Covering]:
    """Yield every complete tatami covering satisfying the constraints, once
    each, in the deterministic order of the solver's branch order (vertical,
    horizontal, monomino at the first uncovered cell)."""
    constraints.validate(region)
    board = Board(region)
    counts = {TileKind.MONOMINO: 0, TileKind.VDOMINO: 0, TileKind.HDOMINO: 0}
    targets = {
        TileKind.MONOMINO: constraints.monomino_count,
        TileKind.VDOMINO: constraints.vertical_domino_count,
        TileKind.HDOMINO: constraints.horizontal_domino_count,
    }
    if not constraints.allow_monominoes:
        targets[TileKind.MONOMINO] = 0
    area = region.area

    def feasible() -> bool:
        remaining = area - len(board.grid)
        m_target = targets[TileKind.MONOMINO]
        if m_target is not None:
            m_left = m_target - counts[TileKind.MONOMINO]
            if m_left < 0 or m_left > remaining or (remaining - m_left) % 2:
                return False
        for kind in (TileKind.VDOMINO, TileKind.HDOMINO):
            if targets[kind] is not None and counts[kind] > targets[kind]:
                return False
        return True

    def done() -> bool:
        return all(
            target is None or counts[kind] == target for kind, target in targets.items()
        )

    def dfs() -> Iterator[Covering]:
        cell = board.first_uncovered()
        if cell is None:
            if done():
                yield board.to_covering()
            return
        for kind in KIND_ORDER:
            target = targets[kind]
            if target is not None and counts[kind] >= target:
                continue
            if not board.fits(kind, cell):
                continue
            tid = board.place(kind, cell)
            counts[kind] += 1
            if feasible():
                yield from dfs()
            counts[kind] -= 1
            board.unplace(tid)

    if feasible():
        yield from dfs()


@dataclass(frozen=True)
class CountResult:
    count: int
    method: str  # "formula" | "enumeration"


def count_square_coverings(n: int, m: int) -> CountResult:
    """Closed-form number of tatami coverings of the n x n grid with exactly
    m monominoes.  Zero when n and m differ in parity (area parity) or when
    m exceeds n."""
    if n < 1 or m < 0:
        raise ValueError("require n >= 1 and m >= 0")
    if (n - m) % 2 or m > n:
        count = 0
    elif m < n:
        count = m * 2**m + (m + 1) * 2 ** (m + 1)
    else:  # m == n
        count = n * 2 ** (n - 1)
    return CountResult(count, "formula")


def count_by_enumeration(region: Region, m: int) -> CountResult:
    """Exact count of tatami coverings with m monominoes, by full search."""
    if region.area > MAX_ENUMERATION_AREA:
        raise RegionTooLargeError(
            f"region area {region.area} exceeds the enumeration guard "
            f"({MAX_ENUMERATION_AREA})"
        )
    if (region.area - m) % 2 or m < 0 or m > region.area:
        return CountResult(0, "enumeration")
    total = sum(1 for _ in enumerate_coverings(region, EnumConstraints(monomino_count=m)))
    return CountResult(total, "enumeration")
