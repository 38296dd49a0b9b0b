"""Unit tests for the entity and relation renderers."""

from pathlib import Path

import pytest
from src.app.classes import RelationTriple
from src.app.document import Document, read_documents
from src.app.span import Span
from src.lib import OverlappingSpans
from src.ui import DanglingRelation
from src.ui.entities import EntityRenderer, render_entities
from src.ui.palette import DEFAULT_PALETTE, assign_colors
from src.ui.relations import RelationRenderer, render_relations

GOLDEN_DIR = Path(__file__).resolve().parents[1] / "fixtures" / "golden"

TOM = "Tom & Jerry <3 cheese"
TOM_ENTITIES = [Span(0, 3, "Person"), Span(6, 11, "Person"), Span(15, 21, "Food")]


@pytest.fixture(autouse=True)
def default_palette(monkeypatch):
    monkeypatch.delenv("ZSIE_PALETTE", raising=False)


@pytest.mark.parametrize("style,renderer_class", [("ent", EntityRenderer), ("rel", RelationRenderer)])
def test_golden_files(style, renderer_class):
    """Test byte equality with the stored renderings."""
    docs = read_documents(GOLDEN_DIR / "documents.jsonl")
    renderer = renderer_class()
    for index, doc in enumerate(docs):
        expected = (GOLDEN_DIR / f"doc-{index:04d}.{style}.html").read_text(encoding="utf-8")
        assert renderer.render(doc) == expected


def test_assign_colors_sorted_and_cycling():
    """Test colors follow sorted class names and wrap past the palette."""
    names = [f"C{i:02d}" for i in range(13)]
    colors = assign_colors(reversed(names))
    assert [colors[n] for n in names[:12]] == list(DEFAULT_PALETTE)
    assert colors["C12"] == DEFAULT_PALETTE[0]


def test_assign_colors_from_env(monkeypatch):
    """Test that ZSIE_PALETTE replaces the built-in colors."""
    monkeypatch.setenv("ZSIE_PALETTE", "#111111, #222222")
    assert assign_colors(["b", "a", "c"]) == {"a": "#111111", "b": "#222222", "c": "#111111"}


def test_entities_distinct_colors_per_class():
    """Test that each class gets its own color and the label follows the text."""
    page = render_entities(Document(TOM, entities=TOM_ENTITIES))
    assert page.count("background: #bfeeb7") == 2
    assert page.count("background: #7aecec") == 1
    assert "Jerry<span" in page
    assert ">Food</span></mark>" in page


def test_entities_escape_text():
    """Test that markup in the text is escaped."""
    page = render_entities(Document("<b>IBM</b>", entities=[Span(3, 6, "Company")]))
    assert "&lt;b&gt;" in page
    assert "<b>" not in page


def test_entities_show_kb_id():
    """Test that linked spans show their knowledge base id after the label."""
    page = render_entities(Document("Apple", entities=[Span(0, 5, "Company", kb_id="Q1")]))
    assert "Company Q1</span>" in page


def test_entities_reject_overlaps():
    """Test that overlapping entity spans cannot be rendered."""
    doc = Document(TOM)
    doc.entities = [Span(0, 5, "A"), Span(3, 11, "B")]
    with pytest.raises(OverlappingSpans):
        EntityRenderer().render(doc)


def test_relations_one_arc_per_triple():
    """Test arcs, including two leaving the same box."""
    jerry, cheese, tom = TOM_ENTITIES[1], TOM_ENTITIES[2], TOM_ENTITIES[0]
    doc = Document(TOM, entities=TOM_ENTITIES, relations=[
        RelationTriple(jerry, cheese, "eats"),
        RelationTriple(jerry, tom, "chases"),
    ])
    page = render_relations(doc)
    assert page.count('<path class="arc"') == 2
    assert page.count('<g class="entity">') == 3
    assert page.count('d="M180,') == 2


def test_relations_without_triples_draw_boxes_only():
    """Test a document with entities but no relations."""
    page = render_relations(Document(TOM, entities=TOM_ENTITIES))
    assert '<path class="arc"' not in page
    assert page.count('<g class="entity">') == 3


def test_relations_reject_dangling_triple():
    """Test that a triple must point at entity spans."""
    doc = Document(TOM, entities=TOM_ENTITIES[:2], relations=[
        RelationTriple(TOM_ENTITIES[1], Span(15, 21), "eats"),
    ])
    with pytest.raises(DanglingRelation):
        RelationRenderer().render(doc)


def test_relations_reject_overlaps():
    """Test that overlapping entity spans cannot be rendered."""
    doc = Document(TOM)
    doc.entities = [Span(0, 5, "A"), Span(3, 11, "B")]
    with pytest.raises(OverlappingSpans):
        render_relations(doc)


def test_relations_escape_labels():
    """Test that relation labels are escaped."""
    doc = Document(TOM, entities=TOM_ENTITIES, relations=[
        RelationTriple(TOM_ENTITIES[0], TOM_ENTITIES[1], "<likes>"),
    ])
    page = render_relations(doc)
    assert "&lt;likes&gt;" in page
    assert "<likes>" not in page
