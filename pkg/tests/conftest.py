"""Shared fixtures: hand-built exercise boards used across the suite."""
from __future__ import annotations

import pytest

from tatami.model import Covering, Region, Tile, TileKind

M, H, V = TileKind.MONOMINO, TileKind.HDOMINO, TileKind.VDOMINO


def pinwheel(center, clockwise=True):
    """The five tiles of a monomino-centered vortex."""
    r, c = center
    if clockwise:
        arms = [(H, (r - 1, c - 1)), (V, (r - 1, c + 1)), (H, (r + 1, c)), (V, (r, c - 1))]
    else:
        arms = [(H, (r - 1, c)), (V, (r - 1, c - 1)), (H, (r + 1, c - 1)), (V, (r, c + 1))]
    return [(M, (r, c))] + arms


# The pinwheel-shaped ring of dominoes around the 3x3 core of a 5x5 board,
# and its mirror image (the ring's chirality has to match the core's).
RING_5X5 = [
    (H, (0, 0)), (H, (0, 2)), (V, (0, 4)), (V, (2, 4)),
    (H, (4, 3)), (H, (4, 1)), (V, (3, 0)), (V, (1, 0)),
]
RING_5X5_MIRROR = [
    (H, (0, 3)), (H, (0, 1)), (V, (0, 0)), (V, (2, 0)),
    (H, (4, 0)), (H, (4, 2)), (V, (3, 4)), (V, (1, 4)),
]


def make_covering(region: Region, parts) -> Covering:
    return Covering(region, [Tile(i, k, a) for i, (k, a) in enumerate(parts)])


@pytest.fixture
def vortex_5x5_cw() -> Covering:
    return make_covering(Region.rectangle(5, 5), RING_5X5 + pinwheel((2, 2), True))


@pytest.fixture
def vortex_5x5_ccw() -> Covering:
    return make_covering(
        Region.rectangle(5, 5), RING_5X5_MIRROR + pinwheel((2, 2), False)
    )


# A 4x4 covering whose analysis yields loners and a vee:
#   ^ . ^ .
#   v ^ v ^
#   . v ^ v
#   < > v .
VEE_4X4 = [
    (V, (0, 0)), (M, (0, 1)), (V, (0, 2)), (M, (0, 3)),
    (V, (1, 1)), (V, (1, 3)),
    (M, (2, 0)), (V, (2, 2)),
    (H, (3, 0)), (M, (3, 3)),
]


@pytest.fixture
def vee_4x4() -> Covering:
    return make_covering(Region.rectangle(4, 4), VEE_4X4)


@pytest.fixture
def all_features_covering() -> Covering:
    """A three-panel exercise board exhibiting every feature type: a 5x5
    vortex panel, the 4x4 vee-and-loners panel, and a 2x2 bidimer panel."""
    cells = {(r, c) for r in range(5) for c in range(5)}
    cells |= {(r, c + 7) for r in range(4) for c in range(4)}
    cells |= {(r, c) for r in range(6, 8) for c in range(2)}
    parts = RING_5X5 + pinwheel((2, 2), True)
    parts += [(k, (r, c + 7)) for k, (r, c) in VEE_4X4]
    parts += [(H, (6, 0)), (H, (7, 0))]
    return make_covering(Region(cells), parts)


# Seeds on a 5x5 board whose forced-move propagation completes the covering
# with zero search: the bare central pinwheel.
FORCED_COMPLETION_SEEDS = pinwheel((2, 2), True)

# Seeds on a 5x5 board that propagation proves uncompletable.
DOOMED_SEEDS = [(M, (1, 2)), (V, (1, 3)), (H, (0, 3))]

# Given tiles making the 4x6 consultant instance unsatisfiable.
NO_INSTANCE_GIVENS = [(M, (2, 5)), (M, (3, 4))]
