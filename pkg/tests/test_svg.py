import pathlib
import random

import pytest

from sliceshear import (
    ChartDocument,
    ClassMonomial,
    CyclicGroup,
    DslSemanticError,
    VirtualRep,
    emit_svg,
    parse,
)
from helpers import random_document

GOLDENS = pathlib.Path(__file__).parent / "goldens"


def render_golden(stem: str) -> bytes:
    doc = parse((GOLDENS / f"{stem}.dsl").read_text())
    return emit_svg(doc)


class TestGoldens:
    @pytest.mark.parametrize("stem", ["hu_kriz_c2", "sheared_c4"])
    def test_byte_identical(self, stem):
        assert render_golden(stem) == (GOLDENS / f"{stem}.svg").read_bytes()

    @pytest.mark.parametrize("stem", ["hu_kriz_c2", "sheared_c4"])
    def test_deterministic_across_renders(self, stem):
        assert render_golden(stem) == render_golden(stem)


class TestRendering:
    def test_empty_document_axes_only(self):
        doc = parse("group C2\nwindow 0 4 4\n")
        text = emit_svg(doc).decode()
        assert text.count('class="axis"') == 2
        assert "circle" not in text and "marker-end" not in text
        assert "warning" not in text.split("</style>")[1]

    def test_window_required(self):
        doc = parse("group C2\nclass u = u2S\n")
        with pytest.raises(DslSemanticError):
            emit_svg(doc)

    def test_markers_and_arrows_present(self):
        doc = parse(
            "group C2\nwindow -2 4 4\nclass u1 = u2S\n"
            "diff 3: u2S -> Nt[1,1]*aS^3\n"
        )
        text = emit_svg(doc).decode()
        assert text.count("<circle") == 1
        assert text.count('marker-end="url(#arrow)"') == 1
        assert 'class="d-user"' in text

    def test_guide_through_origin_at_45_degrees(self):
        doc = parse("group C2\nwindow 0 4 4\nguide L1\n")
        text = emit_svg(doc).decode()
        # chart origin is at (PAD, height - PAD) = (48, 192); slope-1 line
        # must leave it one cell over per cell up
        assert '<line class="guide" x1="48" y1="192" x2="192" y2="48"/>' in text

    def test_window_excluding_everything_warns(self):
        doc = parse("group C2\nwindow 10 12 4\nclass u1 = u2S\n")
        text = emit_svg(doc).decode()
        assert "warning: window excludes every declared item" in text

    def test_zero_class_not_drawn(self):
        doc = parse("group C2\nwindow -2 4 4\nclass z = 0\n")
        assert b"<circle" not in emit_svg(doc)

    def test_labels_escaped(self):
        group = CyclicGroup(1)
        doc = ChartDocument(group=group, grading=VirtualRep.zero(group))
        doc.window = (0, 2, 2)
        doc.classes.append(("a<b&c", ClassMonomial.one(group, 1)))
        text = emit_svg(doc).decode()
        assert "a&lt;b&amp;c" in text

    def test_every_random_document_with_window_renders(self):
        rng = random.Random(67)
        rendered = 0
        for _ in range(60):
            doc = random_document(rng)
            if doc.window is None:
                continue
            data = emit_svg(doc)
            assert data.startswith(b"<?xml") and data.endswith(b"</svg>\n")
            assert emit_svg(doc) == data
            rendered += 1
        assert rendered > 20
