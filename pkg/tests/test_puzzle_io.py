"""Document format, ASCII/SVG rendering, and the Tomoku generator."""

import pathlib
import xml.etree.ElementTree as ET

import pytest

from conftest import RING_5X5, VEE_4X4, make_covering, pinwheel
from tatami.model import Region, TileKind
from tatami.puzzle_io import (
    ANY_DIFFICULTY,
    NO_BACKTRACK,
    PuzzleDocument,
    PuzzleSyntaxError,
    SchemaError,
    generate_tomoku,
    parse_puzzle,
    render_ascii,
    render_puzzle,
    render_svg,
)
from tatami.solvers import Mode, PuzzleSpec, projections, solve, solve_all

H, V, M = TileKind.HDOMINO, TileKind.VDOMINO, TileKind.MONOMINO

PUZZLES = pathlib.Path(__file__).resolve().parent.parent / "puzzles"
GOLDEN = pathlib.Path(__file__).resolve().parent / "golden"


class TestRoundTrip:
    @pytest.mark.parametrize(
        "path", sorted(PUZZLES.glob("*.tatami")), ids=lambda p: p.stem
    )
    def test_bundled_corpus_round_trips(self, path):
        text = path.read_text()
        doc = parse_puzzle(text)
        assert render_puzzle(doc) == text
        assert parse_puzzle(render_puzzle(doc)) == doc

    def test_unknown_fields_preserved(self):
        base = (PUZZLES / "oku-5x5.tatami").read_text()
        lines = base.splitlines()
        lines.insert(2, "x-custom-note: kept verbatim")
        doc = parse_puzzle("\n".join(lines) + "\n")
        assert ("x-custom-note", "kept verbatim") in doc.extras
        assert "x-custom-note: kept verbatim" in render_puzzle(doc)

    def test_solution_round_trips(self):
        doc = generate_tomoku(3, 4, seed=1)
        assert doc.solution is not None
        again = parse_puzzle(render_puzzle(doc))
        assert again.solution.canonical() == doc.solution.canonical()


class TestParseErrors:
    def test_missing_header(self):
        with pytest.raises(PuzzleSyntaxError) as exc:
            parse_puzzle("mode: oku\n")
        assert exc.value.line == 1

    def test_malformed_field_line(self):
        with pytest.raises(PuzzleSyntaxError) as exc:
            parse_puzzle("tatami-puzzle v1\nmode oku\n")
        assert exc.value.line == 2

    def test_bad_tile_token(self):
        text = "tatami-puzzle v1\nmode: consultant\nregion:\n|##\n|##\ngiven-tiles: Q@0,0\n"
        with pytest.raises(PuzzleSyntaxError):
            parse_puzzle(text)

    def test_missing_mode_is_schema_error(self):
        with pytest.raises(SchemaError):
            parse_puzzle("tatami-puzzle v1\nregion:\n|##\n|##\n")

    def test_unknown_mode_is_schema_error(self):
        with pytest.raises(SchemaError):
            parse_puzzle("tatami-puzzle v1\nmode: chess\nregion:\n|##\n|##\n")

    def test_tomoku_without_projections_is_schema_error(self):
        with pytest.raises(SchemaError):
            parse_puzzle("tatami-puzzle v1\nmode: tomoku\nregion:\n|##\n|##\n")

    def test_bad_triple_arity(self):
        text = (
            "tatami-puzzle v1\nmode: tomoku\nregion:\n|##\n|##\n"
            "row-projections: 0,2 0,2,0\ncol-projections: 1,0,1 1,0,1\n"
        )
        with pytest.raises(PuzzleSyntaxError):
            parse_puzzle(text)


class TestAsciiRendering:
    def test_golden_vortex_byte_stable(self):
        cov = make_covering(Region.rectangle(5, 5), RING_5X5 + pinwheel((2, 2), True))
        assert render_ascii(cov) == (GOLDEN / "vortex-5x5-cw.txt").read_text()

    def test_golden_vee_byte_stable(self):
        cov = make_covering(Region.rectangle(4, 4), VEE_4X4)
        assert render_ascii(cov) == (GOLDEN / "vee-4x4.txt").read_text()

    def test_glyphs_and_frame(self):
        cov = make_covering(
            Region.rectangle(2, 3), [(M, (0, 0)), (V, (0, 2)), (H, (1, 0))]
        )
        lines = render_ascii(cov).splitlines()
        assert lines[0] == "+---+" and lines[-1] == "+---+"
        assert lines[1] == "|•.^|"  # monomino, empty, vertical-domino top
        assert lines[2] == "|<>v|"  # horizontal domino, vertical-domino bottom

    def test_empty_cells_render_as_dots(self):
        cov = make_covering(Region.rectangle(2, 2), [(M, (0, 0))])
        body = render_ascii(cov).splitlines()[1:-1]
        assert body == ["|•.|", "|..|"]


class TestSvgRendering:
    def test_deterministic(self):
        cov = make_covering(Region.rectangle(5, 5), RING_5X5 + pinwheel((2, 2), True))
        assert render_svg(cov) == render_svg(cov)

    def test_valid_xml_with_expected_shapes(self):
        cov = make_covering(Region.rectangle(5, 5), RING_5X5 + pinwheel((2, 2), True))
        root = ET.fromstring(render_svg(cov))
        assert root.tag.endswith("svg")
        rects = root.iter("{http://www.w3.org/2000/svg}rect")
        circles = root.iter("{http://www.w3.org/2000/svg}circle")
        assert sum(1 for _ in rects) >= len(cov.tiles)
        assert sum(1 for _ in circles) == 1  # one monomino marker

    def test_gallery_lays_out_multiple_boards(self):
        cov = make_covering(Region.rectangle(2, 2), [(V, (0, 0)), (V, (0, 1))])
        single = render_svg(cov)
        gallery = render_svg([cov] * 5, columns=4)
        assert gallery != single
        root = ET.fromstring(gallery)
        ns = "{http://www.w3.org/2000/svg}"
        assert sum(1 for _ in root.iter(f"{ns}rect")) >= 5 * 2


class TestGenerateTomoku:
    def test_deterministic_per_seed(self):
        a, b = generate_tomoku(4, 5, seed=3), generate_tomoku(4, 5, seed=3)
        assert render_puzzle(a) == render_puzzle(b)

    def test_solution_matches_projections(self):
        doc = generate_tomoku(4, 5, seed=9)
        assert doc.puzzle.mode is Mode.TOMOKU
        assert projections(doc.solution) == doc.puzzle.projections
        assert solve(doc.puzzle, limit=1).satisfiable

    def test_no_backtrack_difficulty(self):
        from tatami.solvers import solve_with_backtrack_count

        doc = generate_tomoku(3, 10, seed=7, difficulty=NO_BACKTRACK)
        _, backtracks = solve_with_backtrack_count(doc.puzzle)
        assert backtracks == 0
        assert doc.puzzle.difficulty == NO_BACKTRACK

    def test_unknown_difficulty_rejected(self):
        with pytest.raises(ValueError):
            generate_tomoku(3, 4, seed=0, difficulty="impossible")


class TestBundledInstances:
    def test_consultant_yes_is_satisfiable(self):
        doc = parse_puzzle((PUZZLES / "consultant-4x6-yes.tatami").read_text())
        assert solve(doc.puzzle, limit=1).satisfiable

    def test_consultant_no_is_unsatisfiable(self):
        doc = parse_puzzle((PUZZLES / "consultant-4x6-no.tatami").read_text())
        assert solve_all(doc.puzzle).status == "unsatisfiable"

    def test_bundled_tomoku_solutions_verify(self):
        for name in ("tomoku-3x10-s7", "tomoku-4x5-s3", "tomoku-6x8-s11"):
            doc = parse_puzzle((PUZZLES / f"{name}.tatami").read_text())
            assert doc.solution is not None
            assert projections(doc.solution) == doc.puzzle.projections
