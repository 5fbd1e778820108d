"""Tatami coverings: model, enumeration, structure analysis, puzzle solvers,
the Noku game engine, file formats, and an HTTP play service.

A tatami covering tiles a region with monominoes and dominoes so that no
four tiles meet at any grid vertex.
"""

from .enumeration import (
    CountResult,
    EnumConstraints,
    InconsistentConstraintsError,
    RegionTooLargeError,
    count_by_enumeration,
    count_square_coverings,
    enumerate_coverings,
)
from .model import (
    Covering,
    EmptyRegionError,
    Legal,
    OutOfRegion,
    Overlap,
    Region,
    TatamiBlocked,
    Tile,
    TileKind,
    region_from_ascii,
    violations,
)
from .noku import (
    BudgetExceededError,
    GameState,
    GameTreeStats,
    GameVerdict,
    Move,
    Ruleset,
    calibrate_ruleset,
    game_tree_stats,
    legal_moves,
    solve_noku,
)
from .puzzle_io import (
    GenerationBudgetError,
    PuzzleDocument,
    PuzzleSyntaxError,
    SchemaError,
    generate_tomoku,
    parse_puzzle,
    render_ascii,
    render_puzzle,
    render_svg,
)
from .solvers import (
    MalformedPuzzleError,
    Mode,
    PieceBudget,
    Projections,
    PuzzleSpec,
    SolveOutcome,
    projections,
    random_covering,
    solve,
    solve_all,
    solve_with_backtrack_count,
    tomoku_from_covering,
)
from .structure import (
    BoundarySignature,
    FeatureReport,
    IncompleteCoveringError,
    NonRectangularError,
    boundary_signature,
    classify_features,
)

__version__ = "1.0.0"

__all__ = [
    "BoundarySignature",
    "BudgetExceededError",
    "CountResult",
    "Covering",
    "EmptyRegionError",
    "EnumConstraints",
    "FeatureReport",
    "GameState",
    "GameTreeStats",
    "GameVerdict",
    "GenerationBudgetError",
    "InconsistentConstraintsError",
    "IncompleteCoveringError",
    "Legal",
    "MalformedPuzzleError",
    "Mode",
    "Move",
    "NonRectangularError",
    "OutOfRegion",
    "Overlap",
    "PieceBudget",
    "Projections",
    "PuzzleDocument",
    "PuzzleSpec",
    "PuzzleSyntaxError",
    "Region",
    "RegionTooLargeError",
    "Ruleset",
    "SchemaError",
    "SolveOutcome",
    "TatamiBlocked",
    "Tile",
    "TileKind",
    "boundary_signature",
    "calibrate_ruleset",
    "classify_features",
    "count_by_enumeration",
    "count_square_coverings",
    "enumerate_coverings",
    "game_tree_stats",
    "generate_tomoku",
    "legal_moves",
    "parse_puzzle",
    "projections",
    "random_covering",
    "render_ascii",
    "render_puzzle",
    "render_svg",
    "region_from_ascii",
    "solve",
    "solve_all",
    "solve_noku",
    "solve_with_backtrack_count",
    "tomoku_from_covering",
    "violations",
]
