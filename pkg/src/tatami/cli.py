"""Command-line entry point: solving, counting, enumerating, generating,
game analysis, rendering, and serving.

Exit codes: 0 success, 1 unsatisfiable/no-match outcomes, 2 usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .enumeration import (
    EnumConstraints,
    count_by_enumeration,
    count_square_coverings,
    enumerate_coverings,
)
from .model import Region
from .noku import GameState, Ruleset, calibrate_ruleset, game_tree_stats, solve_noku
from .puzzle_io import (
    ANY_DIFFICULTY,
    NO_BACKTRACK,
    PuzzleDocument,
    generate_tomoku,
    parse_puzzle,
    render_ascii,
    render_puzzle,
    render_svg,
)
from .solvers import Mode, solve

EXIT_OK = 0
EXIT_UNSAT = 1
EXIT_USAGE = 2


def _out(args, human: str, payload: dict) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


def _covering_json(covering) -> list[dict]:
    return [
        {"kind": k, "row": r, "col": c}
        for k, r, c in covering.canonical()
    ]


def _cmd_solve(args) -> int:
    doc = parse_puzzle(Path(args.puzzle_file).read_text())
    limit = None if args.all else args.limit
    outcome = solve(doc.puzzle, limit=limit)
    if not outcome.satisfiable:
        _out(args, "unsatisfiable", {"status": "unsatisfiable", "solutions": []})
        return EXIT_UNSAT
    rendered = []
    for covering in outcome.coverings:
        if args.render == "svg":
            rendered.append(render_svg(covering))
        else:
            rendered.append(render_ascii(covering))
    human = f"{outcome.status}: {len(outcome.coverings)} solution(s)\n" + "\n\n".join(rendered)
    _out(args, human, {
        "status": outcome.status,
        "solutions": [_covering_json(c) for c in outcome.coverings],
    })
    return EXIT_OK


def _cmd_count(args) -> int:
    if args.oracle:
        result = count_by_enumeration(Region.rectangle(args.n, args.n), args.m)
    else:
        result = count_square_coverings(args.n, args.m)
    _out(args, str(result.count),
         {"n": args.n, "m": args.m, "count": result.count, "method": result.method})
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    region = Region.rectangle(args.rows, args.cols)
    constraints = EnumConstraints(
        monomino_count=args.monominoes, vertical_domino_count=args.vertical
    )
    coverings = list(enumerate_coverings(region, constraints))
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    gallery = out_dir / f"gallery-{args.rows}x{args.cols}.svg"
    if coverings:
        gallery.write_text(render_svg(coverings))
    for i, covering in enumerate(coverings):
        (out_dir / f"covering-{i:04d}.txt").write_text(render_ascii(covering) + "\n")
    _out(args, f"{len(coverings)} coverings written to {out_dir}",
         {"count": len(coverings), "out": str(out_dir)})
    return EXIT_OK if coverings else EXIT_UNSAT


def _cmd_generate_tomoku(args) -> int:
    difficulty = NO_BACKTRACK if args.no_backtrack else ANY_DIFFICULTY
    doc = generate_tomoku(args.rows, args.cols, args.seed, difficulty)
    text = render_puzzle(doc)
    if args.out:
        Path(args.out).write_text(text)
        _out(args, f"written to {args.out}", {"out": args.out, "document": text})
    else:
        _out(args, text, {"document": text})
    return EXIT_OK


def _cmd_noku(args) -> int:
    region = Region.rectangle(args.rows, args.cols)
    state = GameState(region)
    if args.calibrate is not None:
        matches = calibrate_ruleset(region, args.calibrate)
        if matches:
            human = "\n".join(
                f"match: p1={'+'.join(k.value for k in rs.player1_kinds)} "
                f"p2={'+'.join(k.value for k in rs.player2_kinds)} root_counted={root}"
                for rs, root in matches
            )
            _out(args, human, {"matches": len(matches)})
            return EXIT_OK
        _out(args, "no match", {"matches": 0})
        return EXIT_UNSAT
    if args.census:
        stats = game_tree_stats(state)
        _out(args, str(stats.nodes), {
            "nodes": stats.nodes,
            "distinct": stats.distinct,
            "max_depth": stats.max_depth,
            "leaves": stats.leaves,
        })
        return EXIT_OK
    verdict = solve_noku(state)
    move = verdict.best_move
    human = f"player {verdict.winner} wins"
    if move is not None:
        human += f"; winning move {move.kind.value}@{move.anchor[0]},{move.anchor[1]}"
    _out(args, human, {
        "winner": verdict.winner,
        "best_move": None if move is None else
            {"kind": move.kind.value, "row": move.anchor[0], "col": move.anchor[1]},
        "positions_examined": verdict.positions_examined,
    })
    return EXIT_OK


def _cmd_render(args) -> int:
    doc = parse_puzzle(Path(args.puzzle_file).read_text())
    covering = doc.solution if doc.solution is not None else doc.puzzle.region and None
    if covering is None:
        from .model import Covering

        covering = Covering(doc.puzzle.region, doc.puzzle.given_tiles)
    text = render_svg(covering) if args.render == "svg" else render_ascii(covering)
    _out(args, text, {"rendered": text})
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(
        puzzle_dir=Path(args.puzzles) if args.puzzles else None,
        log_dir=Path(args.log_dir) if args.log_dir else None,
    )
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tatami", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("solve", help="solve a puzzle document")
    p.add_argument("puzzle_file")
    p.add_argument("--all", action="store_true", help="find every solution")
    p.add_argument("--limit", type=int, default=1)
    p.add_argument("--render", choices=("ascii", "svg"), default="ascii")
    common(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("count", help="count coverings of the n-by-n square")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True, help="number of monominoes")
    p.add_argument("--oracle", action="store_true",
                   help="count by explicit enumeration instead of the closed form")
    common(p)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("enumerate", help="write out all coverings of a rectangle")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--monominoes", type=int, default=None)
    p.add_argument("--vertical", type=int, default=None,
                   help="exact number of vertical dominoes")
    p.add_argument("--out", required=True)
    common(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("generate-tomoku", help="generate a Tomoku instance")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--no-backtrack", action="store_true")
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=_cmd_generate_tomoku)

    p = sub.add_parser("noku", help="analyze the two-player game")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--census", action="store_true", help="count game-tree nodes")
    p.add_argument("--calibrate", type=int, default=None,
                   help="search ruleset conventions for this node count")
    common(p)
    p.set_defaults(func=_cmd_noku)

    p = sub.add_parser("render", help="render a puzzle document")
    p.add_argument("puzzle_file")
    p.add_argument("--render", choices=("ascii", "svg"), default="ascii")
    common(p)
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--puzzles", help="puzzle document directory")
    p.add_argument("--log-dir", help="append-only session log directory")
    common(p)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
