"""Deterministic character-trigram hashing encoder."""

import logging
from functools import lru_cache

import numpy as np

from src.lib.embedding.interface import EncoderInterface

logger = logging.getLogger(__name__)

DIMENSION = 256

FNV64_OFFSET_BASIS = 0xCBF29CE484222325
FNV64_PRIME = 0x100000001B3
FNV64_MASK = 0xFFFFFFFFFFFFFFFF


def fnv1a_64(data: bytes) -> int:
    """FNV-1a 64-bit hash of ``data``."""
    h = FNV64_OFFSET_BASIS
    for byte in data:
        h ^= byte
        h = (h * FNV64_PRIME) & FNV64_MASK
    return h


@lru_cache(maxsize=4096)
def _bucket(trigram: str) -> int:
    return fnv1a_64(trigram.encode("utf-8")) % DIMENSION


@lru_cache(maxsize=16384)
def embed(text: str) -> np.ndarray:
    """
    Embed text as an L2-normalized histogram of hashed character trigrams.

    The text is lowercased and every window of three characters (spaces
    included) is hashed into one of 256 buckets. Inputs shorter than three
    characters embed to the zero vector.

    Returns:
        np.ndarray: Read-only float64 vector of length 256
    """
    vector = np.zeros(DIMENSION, dtype=np.float64)
    lowered = text.lower()
    for i in range(len(lowered) - 2):
        vector[_bucket(lowered[i:i + 3])] += 1.0
    norm = np.linalg.norm(vector)
    if norm > 0:
        vector /= norm
    # Cached instances are shared
    vector.setflags(write=False)
    return vector


def cosine(vec1: np.ndarray, vec2: np.ndarray) -> float:
    """
    Compute cosine similarity between two vectors.

    Returns:
        float: Cosine similarity, 0.0 when either vector is zero
    """
    norm1 = np.linalg.norm(vec1)
    norm2 = np.linalg.norm(vec2)
    if norm1 == 0 or norm2 == 0:
        return 0.0
    return float(np.dot(vec1, vec2) / (norm1 * norm2))


def clip_score(value: float) -> float:
    """Clamp a similarity into the [0, 1] score range."""
    return max(0.0, min(1.0, value))


class TrigramHashEncoder(EncoderInterface):
    """Encoder backed by :func:`embed`; stateless and safe to share across threads."""

    @property
    def dimension(self) -> int:
        return DIMENSION

    def encode(self, text: str) -> np.ndarray:
        return embed(text)
