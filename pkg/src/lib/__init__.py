"""Component abstractions for zero-shot extraction pipelines."""


# Base error types
class ZeroShotError(Exception):
    """Base exception for every error raised by this package."""
    pass


class ConfigError(ZeroShotError):
    """Base exception for pipeline/ensemble configuration errors."""
    pass


class ComponentError(ZeroShotError):
    """Base exception for errors raised by pipeline components."""
    pass


class DatasetError(ZeroShotError):
    """Base exception for dataset loading errors."""
    pass


class EvaluationError(ZeroShotError):
    """Base exception for metric computation errors."""
    pass


class DuplicateClassName(ConfigError):
    """Two entities (or two relations) share a name."""
    pass


class MissingMentionsExtractor(ConfigError):
    """A linker that needs mentions is configured without a mention stage."""
    pass


class EmptyConfig(ConfigError):
    """No pipeline stage is configured."""
    pass


class UnknownComponent(ConfigError):
    """A component registry key is not registered."""
    pass


class InconsistentVariants(ConfigError):
    """Ensemble description variants cover different entity names."""
    pass


class EmptyEnsemble(ConfigError):
    """An ensemble has no linkers or no description variants."""
    pass


class NoEntitiesConfigured(ComponentError):
    """A linker was asked to predict without entity classes."""
    pass


class NoRelationsConfigured(ComponentError):
    """A relation extractor was asked to predict without relation classes."""
    pass


class MissingEntityAnnotations(ComponentError):
    """A relation extractor received a document that was never linked."""
    pass


class EmptyKnowledgeBase(ComponentError):
    """Knowledge-base linking was attempted against an empty knowledge base."""
    pass


class InvalidInput(ComponentError):
    """A pipeline input is neither text nor a Document."""
    pass


class ParseError(DatasetError):
    """A dataset or annotation file line could not be parsed."""

    def __init__(self, message: str, path=None, line_number: int = None):
        self.path = path
        self.line_number = line_number
        location = ""
        if path is not None:
            location = f"{path}"
            if line_number is not None:
                location += f":{line_number}"
            location += ": "
        super().__init__(f"{location}{message}")


class SpanOutOfBounds(DatasetError):
    """A gold span does not fit its example text."""

    def __init__(self, message: str, example_index: int = None):
        self.example_index = example_index
        prefix = f"example {example_index}: " if example_index is not None else ""
        super().__init__(f"{prefix}{message}")


class UnknownClassLabel(DatasetError):
    """A gold label is missing from its split's class catalog."""
    pass


class UnknownSplit(DatasetError):
    """A requested split does not exist in the dataset."""
    pass


class DatasetIOError(DatasetError):
    """A dataset file is missing or unreadable."""
    pass


class AlignmentError(EvaluationError):
    """Gold and predicted documents do not line up."""
    pass


class OverlappingSpans(EvaluationError):
    """A span layer that must be non-overlapping contains overlaps."""
    pass
