"""Shared text primitives: tokenizers, sentence splitting, stopwords.

Two token rules coexist on purpose and must not be conflated:

* ``whitespace_tokens`` is the chunk-size counting rule (deterministic,
  provider independent).
* ``word_tokens`` is the lexical-index rule: lowercase, split on
  non-alphanumerics, but dotted number groups such as ``23.558`` survive
  as single terms so specification numbers stay matchable.
"""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources

_WORD_RE = re.compile(r"\d+(?:\.\d+)+|[a-z0-9]+")
_SENTENCE_RE = re.compile(r"(?<=[.?!])\s+")


def whitespace_tokens(text: str) -> list[str]:
    return text.split()


def count_tokens(text: str, rule: str = "whitespace") -> int:
    try:
        return len(TOKEN_COUNTERS[rule](text))
    except KeyError:
        raise ValueError(f"unknown token counting rule: {rule!r}") from None


def word_tokens(text: str) -> list[str]:
    """Lexical tokens: lowercased alphanumeric runs, dotted numbers intact."""
    return _WORD_RE.findall(text.lower())


def sentences(text: str) -> list[str]:
    """Split on sentence terminators (., ?, !) followed by whitespace."""
    parts = _SENTENCE_RE.split(text)
    return [p.strip() for p in parts if p.strip()]


@lru_cache(maxsize=1)
def stopwords() -> frozenset[str]:
    raw = resources.files("specrag.data").joinpath("stopwords.txt").read_text("utf-8")
    return frozenset(w.strip() for w in raw.splitlines() if w.strip() and not w.startswith("#"))


def content_words(text: str) -> set[str]:
    """Lowercased word tokens minus stopwords."""
    return {t for t in word_tokens(text) if t not in stopwords()}


TOKEN_COUNTERS = {
    "whitespace": whitespace_tokens,
    "word": word_tokens,
}
