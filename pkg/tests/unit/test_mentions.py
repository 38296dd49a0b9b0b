"""Unit tests for mention extractors."""

import pytest
from src.app.document import doc_from_text
from src.lib import ComponentError
from src.lib.mentions.pattern import PatternMentionsExtractor

CHEMICAL_SENTENCE = (
    "CH2O2 is a chemical compound similar to Acetamide used in "
    "International Business Machines Corporation (IBM)."
)


def _words(doc, spans):
    return [doc.span_text(span) for span in spans]


def test_words_containing_s():
    """Test the letter-s extractor on the chemical compound sentence."""
    doc = doc_from_text(CHEMICAL_SENTENCE)
    spans = PatternMentionsExtractor().predict([doc])[0]
    assert _words(doc, spans) == ["is", "similar", "used", "Business", "Machines"]
    assert all(span.label is None for span in spans)


def test_empty_document_has_no_mentions():
    """Test that an empty text yields no spans."""
    assert PatternMentionsExtractor().predict([doc_from_text("")]) == [[]]


def test_no_matching_words():
    """Test a text without the letter s."""
    assert PatternMentionsExtractor().predict([doc_from_text("AAA BBB")]) == [[]]


def test_case_insensitive_letters():
    """Test matching letters regardless of case."""
    doc = doc_from_text("Sun and moon")
    spans = PatternMentionsExtractor(letters="s", case_sensitive=False).predict([doc])[0]
    assert _words(doc, spans) == ["Sun"]


def test_empty_letters_rejected():
    """Test that the extractor needs at least one letter."""
    with pytest.raises(ValueError):
        PatternMentionsExtractor(letters="")


def test_output_aligned_for_every_batch_size():
    """Test that results are order-aligned and independent of batch size."""
    docs = [doc_from_text(t) for t in [CHEMICAL_SENTENCE, "", "sss", "no match here", "yes"]]
    extractor = PatternMentionsExtractor()
    expected = extractor.predict(docs, batch_size=len(docs))
    assert len(expected) == len(docs)
    for batch_size in (1, 2, 3):
        assert extractor.predict(docs, batch_size=batch_size) == expected


def test_created_from_registry():
    """Test building the extractor from a config entry."""
    from src.lib.component import ComponentKind
    from src.lib.registry import create_component

    extractor = create_component(ComponentKind.MENTIONS_EXTRACTOR, {"type": "pattern-mentions", "params": {"letters": "xy"}})
    assert isinstance(extractor, PatternMentionsExtractor)
    assert extractor.to_config() == {"type": "pattern-mentions", "params": {"letters": "xy", "case_sensitive": True}}


def test_mentions_mock_error():
    """Test the mock extractor's preset spans and error state."""
    from src.lib.mentions.mock import MentionsExtractorMock

    mock = MentionsExtractorMock({"abc def": [(4, 7)]})
    doc = doc_from_text("abc def")
    assert [s.boundaries for s in mock.predict([doc])[0]] == [(4, 7)]

    mock.set_error(True)
    with pytest.raises(ComponentError):
        mock.predict([doc])
