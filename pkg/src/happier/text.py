"""Sentence segmentation and tokenization shared by the impact matcher and
the linkograph pipeline.

Both consumers rely on the exact same rules so that a protein symbol found
by one is found by the other.
"""

import re

_SENTENCE_BREAK = re.compile(r"[.!?\n]+")
_TOKEN = re.compile(r"[a-z0-9]+")

# Function words stripped from impact phrasing before matching; a token not
# on this list counts as a content token.
STOPWORDS = frozenset(
    """a an and are as at be but by for from in into is it its of on or that
    the their then this those to was were which will with""".split()
)


def split_sentences(text: str) -> list[str]:
    """Split on sentence terminators (. ! ?) and newlines, dropping empties."""
    parts = (part.strip() for part in _SENTENCE_BREAK.split(text))
    return [part for part in parts if part]


def tokenize(text: str) -> list[str]:
    """Lowercase alphanumeric tokens, in order of appearance."""
    return _TOKEN.findall(text.lower())


def content_tokens(text: str) -> set[str]:
    return {tok for tok in tokenize(text) if tok not in STOPWORDS}
