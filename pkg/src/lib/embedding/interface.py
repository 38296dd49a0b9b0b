"""Abstract interface for text encoders."""

from abc import ABC, abstractmethod

import numpy as np


class EncoderInterface(ABC):
    """Abstract base class for text encoders."""

    @property
    @abstractmethod
    def dimension(self) -> int:
        """Length of every vector this encoder returns."""
        pass

    @abstractmethod
    def encode(self, text: str) -> np.ndarray:
        """
        Encode text into a fixed-dimension vector.

        Parameters:
            text: Input text (may be empty)

        Returns:
            np.ndarray: Vector of length ``dimension``, unit norm or all zeros
        """
        pass

    def similarity(self, a: str, b: str) -> float:
        """Cosine similarity between the encodings of two texts."""
        from src.lib.embedding.trigram import cosine
        return cosine(self.encode(a), self.encode(b))
