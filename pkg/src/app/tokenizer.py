"""Word tokenization shared by the baseline components and the metrics."""

import re
from typing import List, NamedTuple

# Maximal runs of letters and digits (underscore is a word char but not alphanumeric)
TOKEN_PATTERN = re.compile(r"[^\W_]+")


class Token(NamedTuple):
    text: str
    start: int
    end: int


def tokenize(text: str) -> List[Token]:
    """Split ``text`` into maximal alphanumeric runs with character offsets."""
    return [Token(m.group(), m.start(), m.end()) for m in TOKEN_PATTERN.finditer(text)]
