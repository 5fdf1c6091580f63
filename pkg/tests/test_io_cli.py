from __future__ import annotations

import hashlib
import json
from itertools import combinations

import pytest
from conftest import circular_instances, mutual
from hypothesis import given

from bundlecross.cli import main
from bundlecross.io import (
    ParseError,
    drawing_from_json,
    drawing_to_json,
    format_instance,
    parse_instance,
    parse_metro,
)
from bundlecross.layout import layout_instance, two_slope_layout
from bundlecross.model import CircularInstance, MatchingInstance
from bundlecross.svg import RenderError, render_svg


class TestParse:
    def test_basic(self):
        inst = parse_instance("n 4\nedge 0 2\nedge 1 3")
        assert inst == CircularInstance(4, (0, 1, 2, 3), ((0, 2), (1, 3)))

    def test_comments_and_whitespace(self):
        text = "# header\n  n   5  # five\n\norder 4 3 2 1 0\n edge 0 1 \n"
        assert parse_instance(text) == CircularInstance(5, (4, 3, 2, 1, 0), ((0, 1),))

    @pytest.mark.parametrize(
        "text, line, message",
        [
            ("edge 0 1", 1, "n must come first"),
            ("", 1, "missing n"),
            ("n 3\norder 0 0 1", 2, "not a permutation"),
            ("n 3\nn 3", 2, "duplicate n"),
            ("n 3\nedge 0 3", 2, "out of range"),
            ("n 3\nedge 0 1\nedge 1 0", 3, "duplicate edge"),
            ("n 3\nvertex 1", 2, "unknown directive"),
            ("n x", 1, "integers"),
        ],
    )
    def test_errors(self, text, line, message):
        with pytest.raises(ParseError, match=message) as err:
            parse_instance(text)
        assert err.value.line == line

    @given(circular_instances())
    def test_round_trip(self, inst):
        assert parse_instance(format_instance(inst)) == inst

    def test_metro(self):
        mi = parse_metro("tree\nn 3\ntreeedge 0 1\ntreeedge 1 2\nline 0 2\n")
        assert mi.lines == ((0, 2),) and mi.edges == ((0, 1), (1, 2))
        with pytest.raises(ParseError, match="not a leaf"):
            parse_metro("tree\nn 3\ntreeedge 0 1\ntreeedge 1 2\nline 0 1\n")


class TestDrawingJson:
    @given(circular_instances(8))
    def test_round_trip(self, inst):
        for algorithm in ("two_slope", "outerplanar"):
            r, _, _ = layout_instance(inst, algorithm)
            doc = json.loads(json.dumps(drawing_to_json(r.drawing, r.plan)))
            drawing, plan = drawing_from_json(doc)
            assert drawing == r.drawing
            assert set(plan.bundles) == set(r.plan.bundles)

    def test_fractions_are_strings(self):
        # the reinserted parallel chord sits at a fractional height
        r, _, _ = layout_instance(MatchingInstance.from_edges(8, [(6, 0), (5, 1)]), "outerplanar")
        doc = drawing_to_json(r.drawing, r.plan)
        flat = [c for line in doc.get("geometry", []) for pt in line for c in pt]
        assert all(isinstance(c, (int, str)) for c in flat) and any(isinstance(c, str) for c in flat)


def _sha(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


class TestSvg:
    def test_no_edges(self):
        r = two_slope_layout(MatchingInstance.from_edges(3, []))
        svg = render_svg(r.drawing, r.plan)
        assert svg.count("<circle") == 3 and "<polyline" not in svg and "<polygon" not in svg

    def test_one_crossing(self):
        r = two_slope_layout(MatchingInstance.from_edges(4, [(0, 2), (1, 3)]))
        for mode in ("rectangle", "disk"):
            assert render_svg(r.drawing, r.plan, mode).count("<polygon") == 1

    def test_three_chords_pinned(self):
        r = two_slope_layout(mutual(3))
        svg = render_svg(r.drawing, r.plan)
        assert svg.count('class="bundle"') == 2
        assert svg == render_svg(r.drawing, r.plan)
        assert _sha(svg) == THREE_CHORD_SHA

    def test_missing_geometry(self):
        r = two_slope_layout(mutual(3))
        from dataclasses import replace

        bare = replace(r.drawing, geometry=None)
        with pytest.raises(RenderError, match="no geometry"):
            render_svg(bare, r.plan, "rectangle")
        assert render_svg(bare, r.plan, "disk").count('class="bundle"') == 2


THREE_CHORD_SHA = "18b7d6b4f93fc8fbcd7cc1618b2ef44b0f293c5711cea42e2a1c63f84f8faf74"


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


class TestCli:
    def test_layout_validate_round_trip(self, tmp_path, capsys):
        src = _write(tmp_path, "t.txt", "n 6\nedge 0 3\nedge 1 4\nedge 2 5\n")
        out = str(tmp_path / "r.json")
        assert main(["layout", src, "--json", out]) == 0
        assert main(["validate", out]) == 0
        assert json.loads(open(out).read())["bundles"] == 2

    def test_validate_rejects_corrupted(self, tmp_path, capsys):
        src = _write(tmp_path, "t.txt", "n 6\nedge 0 3\nedge 1 4\nedge 2 5\n")
        out = str(tmp_path / "r.json")
        main(["layout", src, "--json", out])
        doc = json.loads(open(out).read())
        doc["witness"]["bundles"].pop()
        bad = _write(tmp_path, "bad.json", json.dumps(doc))
        assert main(["validate", bad]) == 1
        assert "not a partition" in capsys.readouterr().out

    def test_bounds_k6(self, tmp_path, capsys):
        text = "n 6\n" + "".join(f"edge {u} {v}\n" for u, v in combinations(range(6), 2))
        assert main(["bounds", _write(tmp_path, "k6.txt", text)]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["lb_general"] == 1 and doc["genus_formula_kn"] == 1
        assert doc["lb_general"] <= doc["ub"]

    def test_exact_three_chords(self, tmp_path, capsys):
        assert main(["exact", _write(tmp_path, "t.txt", "n 6\nedge 0 3\nedge 1 4\nedge 2 5\n")]) == 0
        assert json.loads(capsys.readouterr().out)["optimum"] == 2

    def test_exact_cap(self, tmp_path, capsys):
        src = _write(tmp_path, "t.txt", "n 6\nedge 0 3\nedge 1 4\nedge 2 5\n")
        assert main(["exact", src, "--max-edges", "2"]) == 2
        assert main(["exact", src, "--max-k", "1"]) == 2

    def test_usage_errors(self, tmp_path, capsys):
        assert main(["layout", "--bogus"]) == 2
        assert main([]) == 2
        assert main(["layout", _write(tmp_path, "bad.txt", "edge 0 1\n")]) == 2
        assert "line 1" in capsys.readouterr().err
        assert main(["validate", _write(tmp_path, "bad.json", "{")]) == 2

    def test_metro(self, tmp_path, capsys):
        text = "tree\nn 6\ntreeedge 0 1\ntreeedge 0 2\ntreeedge 0 3\ntreeedge 1 4\ntreeedge 1 5\nline 2 4\nline 3 5\n"
        assert main(["metro", _write(tmp_path, "m.txt", text), "--oracle"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["crossings"] == doc["optimum"] == 1 and doc["valid"]

    def test_render_and_determinism(self, tmp_path, capsys):
        src = _write(tmp_path, "k.txt", "n 7\n" + "".join(f"edge {u} {v}\n" for u, v in combinations(range(7), 2)))
        outputs = []
        for run in range(2):
            j, s, d = (str(tmp_path / f"{name}{run}") for name in ("r.json", "r.svg", "d.svg"))
            assert main(["layout", src, "--outerplanar", "greedy", "--json", j, "--svg", s]) == 0
            assert main(["render", j, "--svg", d, "--mode", "disk"]) == 0
            outputs.append(tuple(open(p).read() for p in (j, s, d)))
        assert outputs[0] == outputs[1]
