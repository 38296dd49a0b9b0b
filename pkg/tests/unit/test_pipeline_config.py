"""Unit tests for pipeline configuration and the component registry."""

import json

import pytest
from src.app.classes import Entity, Relation
from src.app.pipeline_config import PipelineConfig, load_config, validate_config
from src.lib import (
    ConfigError,
    DuplicateClassName,
    EmptyConfig,
    MissingMentionsExtractor,
    UnknownComponent,
)

COMPANY_FRUITS_CONFIG = {
    "entities": [
        {"name": "Company", "description": "Names of company or organisation"},
        {"name": "Fruits", "description": "Names of fruits such as pear, banana and orange"},
    ],
    "linker": {"type": "similarity-linker"},
}


def test_end_to_end_linker_without_mentions_is_valid():
    """Test that an end-to-end linker needs no mention stage."""
    config = PipelineConfig.from_dict(COMPANY_FRUITS_CONFIG)
    assert validate_config(config) is config
    assert config.linker.is_end_to_end


def test_validate_config_is_idempotent():
    """Test that validating twice returns an equal config."""
    config = PipelineConfig.from_dict(COMPANY_FRUITS_CONFIG)
    once = validate_config(config)
    assert validate_config(once).to_dict() == once.to_dict()


def test_duplicate_entity_names_rejected():
    """Test that two entities named Fruits are rejected."""
    config = PipelineConfig(
        entities=[Entity("Fruits", "a"), Entity("Fruits", "b")],
        linker={"type": "similarity-linker"},
    )
    with pytest.raises(DuplicateClassName):
        validate_config(config)


def test_duplicate_relation_names_rejected():
    """Test that relation names must be distinct."""
    config = PipelineConfig(
        entities=[Entity("Company", "x", ["IBM"])],
        relations=[Relation("located in"), Relation("located in")],
        linker={"type": "dictionary-linker"},
        relations_extractor={"type": "cosine-relations"},
    )
    with pytest.raises(DuplicateClassName):
        validate_config(config)


def test_mention_requiring_linker_without_mentions_rejected():
    """Test that the kb-linker needs a mentions extractor."""
    config = PipelineConfig(
        entities=[Entity("Company", "technology company")],
        linker={"type": "kb-linker", "params": {"entries": [{"id": "Q1", "title": "IBM"}]}},
    )
    with pytest.raises(MissingMentionsExtractor):
        validate_config(config)


def test_empty_config_rejected():
    """Test that a config without stages is rejected."""
    with pytest.raises(EmptyConfig):
        validate_config(PipelineConfig(entities=[Entity("Company")]))


def test_relations_without_linker_accepted():
    """Test that a relation-only pipeline is valid and classifies given entity pairs."""
    from src.app.document import Document
    from src.app.pipeline import Pipeline
    from src.app.span import Span
    from src.lib import MissingEntityAnnotations

    config = PipelineConfig(
        relations=[Relation("located in", "headquarters of an organisation are located in a city or place")],
        relations_extractor={"type": "cosine-relations", "params": {"threshold": 0.1}},
    )
    assert validate_config(config) is config

    pipeline = Pipeline(config)
    with pytest.raises(MissingEntityAnnotations):
        pipeline.annotate(["IBM headquarters are located in Armonk."])

    doc = Document(
        "IBM headquarters are located in Armonk.",
        entities=[Span(0, 3, "Company"), Span(32, 38, "City")],
    )
    [annotated] = pipeline.annotate([doc])
    assert ((0, 3), (32, 38), "located in") in {t.key for t in annotated.relations}


def test_non_positive_batch_size_rejected():
    """Test that batch_size and workers must be positive integers."""
    with pytest.raises(ConfigError):
        validate_config(PipelineConfig.from_dict({**COMPANY_FRUITS_CONFIG, "batch_size": 0}))
    with pytest.raises(ConfigError):
        validate_config(PipelineConfig.from_dict({**COMPANY_FRUITS_CONFIG, "workers": -1}))


def test_unknown_component_names_key():
    """Test that a registry miss names the offending key."""
    with pytest.raises(UnknownComponent) as excinfo:
        PipelineConfig.from_dict({**COMPANY_FRUITS_CONFIG, "linker": {"type": "no-such-linker"}})
    assert "no-such-linker" in str(excinfo.value)


def test_unknown_component_parameter_rejected():
    """Test that constructor keyword mismatches become ConfigError."""
    with pytest.raises(ConfigError):
        PipelineConfig.from_dict({**COMPANY_FRUITS_CONFIG, "linker": {"type": "similarity-linker", "params": {"tau": 1}}})


def test_unknown_config_key_rejected():
    """Test that unexpected top-level keys are rejected."""
    with pytest.raises(ConfigError):
        PipelineConfig.from_dict({**COMPANY_FRUITS_CONFIG, "gpu": True})


def test_config_dict_round_trip():
    """Test that to_dict output rebuilds an equivalent config."""
    config = PipelineConfig.from_dict({
        **COMPANY_FRUITS_CONFIG,
        "linker": {"type": "similarity-linker", "params": {"threshold": 0.4}},
        "batch_size": 8,
        "device": "cuda",
    })
    rebuilt = PipelineConfig.from_dict(config.to_dict())
    assert rebuilt.to_dict() == config.to_dict()
    assert rebuilt.linker.threshold == 0.4
    assert rebuilt.device == "cuda"


def test_load_config_from_file(tmp_path):
    """Test loading a JSON configuration file."""
    path = tmp_path / "config.json"
    path.write_text(json.dumps(COMPANY_FRUITS_CONFIG), encoding="utf-8")
    config = load_config(path)
    assert [e.name for e in config.entities] == ["Company", "Fruits"]
    assert config.batch_size == 32
    assert config.device == "cpu"


def test_load_config_invalid_json(tmp_path):
    """Test that malformed JSON raises ConfigError."""
    path = tmp_path / "config.json"
    path.write_text("{", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(path)


def test_registry_lists_builtin_components():
    """Test that every built-in key is registered with its kind and end-to-end flag."""
    from src.lib.component import ComponentKind
    from src.lib.registry import get_descriptor, list_components

    keys = {d.key for d in list_components()}
    assert {"pattern-mentions", "similarity-linker", "dictionary-linker", "kb-linker",
            "cosine-relations", "ensemble", "mentions-ensemble"} <= keys
    assert get_descriptor(ComponentKind.LINKER, "similarity-linker").is_end_to_end
    assert not get_descriptor(ComponentKind.LINKER, "kb-linker").is_end_to_end
    assert get_descriptor(ComponentKind.MENTIONS_EXTRACTOR, "pattern-mentions").kind == ComponentKind.MENTIONS_EXTRACTOR


def test_registry_rejects_conflicting_registration():
    """Test that a key cannot be registered twice for different classes."""
    from src.lib.component import ComponentKind
    from src.lib.mentions.mock import MentionsExtractorMock
    from src.lib.registry import ComponentRegistry

    class First(MentionsExtractorMock):
        pass

    class Other(MentionsExtractorMock):
        pass

    registry = ComponentRegistry()
    registry.register("dup", ComponentKind.MENTIONS_EXTRACTOR)(First)
    assert First.registry_key == "dup"

    with pytest.raises(ConfigError):
        registry.register("dup", ComponentKind.MENTIONS_EXTRACTOR)(Other)
