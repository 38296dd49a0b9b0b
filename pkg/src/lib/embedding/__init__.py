"""Text embedding backends used for description similarity."""

from src.lib.embedding.interface import EncoderInterface
from src.lib.embedding.trigram import TrigramHashEncoder, cosine, embed
from src.lib.embedding.mock import EncoderMock

__all__ = ["EncoderInterface", "TrigramHashEncoder", "EncoderMock", "cosine", "embed"]
