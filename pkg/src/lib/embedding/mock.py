"""Mock implementation of EncoderInterface for testing."""

import numpy as np

from src.lib import ComponentError
from src.lib.embedding.interface import EncoderInterface


class EncoderMock(EncoderInterface):
    """Encoder returning preset vectors, for pinning similarities in tests."""

    def __init__(self, vectors: dict = None, dimension: int = 4):
        """
        Initialize mock encoder.

        Parameters:
            vectors: Mapping from text to vector; unknown texts encode to zeros
            dimension: Vector length
        """
        self._dimension = dimension
        self._vectors = {}
        self._error = False
        self.calls = 0
        for text, vector in (vectors or {}).items():
            self.set_vector(text, vector)

    @property
    def dimension(self) -> int:
        return self._dimension

    def encode(self, text: str) -> np.ndarray:
        """Return the preset vector for ``text`` (mock)."""
        if self._error:
            raise ComponentError("Mock encoder error")
        self.calls += 1
        return self._vectors.get(text, np.zeros(self._dimension))

    def set_vector(self, text: str, vector) -> None:
        """Set the vector returned for ``text`` (for testing)."""
        vector = np.asarray(vector, dtype=np.float64)
        if vector.shape != (self._dimension,):
            raise ValueError(f"vector must have dimension {self._dimension}")
        self._vectors[text] = vector

    def set_error(self, error: bool) -> None:
        """Set error state (for testing)."""
        self._error = error
