"""Fuzzy linkograph analysis of exploration transcripts.

Moves are sentence-level utterances. A link connects two moves whose
embedding cosine strictly exceeds the threshold. The k moves with the most
forward links are the divergent set, the k with the most backward links the
convergent set, and submitted center-target pairs are labeled by whether
their target symbol is mentioned in divergent and/or convergent moves.

The offline embedding is a term-frequency vector hashed into 512 buckets
with FNV-1a (64-bit) and L2-normalized. The builtin hash() is salted per
process and must never be used here; determinism across runs is the whole
point of the offline provider.
"""

import statistics
from abc import ABC, abstractmethod
from dataclasses import dataclass, replace
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum

import httpx
import numpy as np

from .errors import EmptyTranscript, InvalidInput, ProviderUnavailable
from .text import split_sentences, tokenize

EMBED_DIM = 512

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_FNV_MASK = 0xFFFFFFFFFFFFFFFF


def fnv1a64(data: bytes) -> int:
    value = _FNV_OFFSET
    for byte in data:
        value ^= byte
        value = (value * _FNV_PRIME) & _FNV_MASK
    return value


@dataclass(frozen=True)
class DesignMove:
    index: int  # 1-based, chronological
    text: str
    embedding: np.ndarray | None = None

    def __eq__(self, other):
        if not isinstance(other, DesignMove):
            return NotImplemented
        if (self.embedding is None) != (other.embedding is None):
            return False
        same_vec = self.embedding is None or bool(np.array_equal(self.embedding, other.embedding))
        return self.index == other.index and self.text == other.text and same_vec


@dataclass(frozen=True)
class Link:
    i: int
    j: int  # i < j, 1-based move indices
    similarity: float


@dataclass(frozen=True)
class Linkograph:
    moves: tuple[DesignMove, ...]
    links: tuple[Link, ...]
    threshold: float
    k: int
    divergent: frozenset[int]
    convergent: frozenset[int]


class DCLabel(str, Enum):
    BOTH = "BothDC"
    EITHER = "EitherDC"
    NEITHER = "NeitherDC"


def segment_moves(transcript: str) -> list[DesignMove]:
    """Sentence-level segmentation; terminators and newlines both split."""
    if not transcript.strip():
        raise EmptyTranscript("transcript is empty")
    sentences = split_sentences(transcript)
    if not sentences:
        raise EmptyTranscript("transcript has no sentences")
    return [DesignMove(index=i, text=s) for i, s in enumerate(sentences, start=1)]


class EmbeddingProvider(ABC):
    @abstractmethod
    def embed_texts(self, texts: list[str]) -> np.ndarray:
        """(n, dim) array of unit-norm rows (a zero-token text embeds to the
        zero vector, the one documented exception)."""


class OfflineEmbeddingProvider(EmbeddingProvider):
    def embed_texts(self, texts):
        out = np.zeros((len(texts), EMBED_DIM))
        for row, text in enumerate(texts):
            for token in tokenize(text):
                out[row, fnv1a64(token.encode()) % EMBED_DIM] += 1.0
            norm = np.linalg.norm(out[row])
            if norm > 0:
                out[row] /= norm
        return out


class RemoteEmbeddingProvider(EmbeddingProvider):
    def __init__(self, url: str, timeout: float = 30.0, client: httpx.Client | None = None):
        self._url = url
        self._client = client or httpx.Client(timeout=timeout)

    def embed_texts(self, texts):
        try:
            response = self._client.post(self._url, json={"texts": texts})
            response.raise_for_status()
        except httpx.HTTPError as exc:
            raise ProviderUnavailable(f"embedding provider: {exc}") from exc
        vectors = np.asarray(response.json()["embeddings"], dtype=float)
        if vectors.shape[0] != len(texts):
            raise ProviderUnavailable("embedding provider returned wrong row count")
        norms = np.linalg.norm(vectors, axis=1, keepdims=True)
        norms[norms == 0] = 1.0
        return vectors / norms


def embed(provider: EmbeddingProvider, moves: list[DesignMove]) -> list[DesignMove]:
    vectors = provider.embed_texts([m.text for m in moves])
    return [replace(m, embedding=vectors[i]) for i, m in enumerate(moves)]


def top_k(k: int, counts: dict[int, int]) -> frozenset[int]:
    """The k highest-count move indices, zero counts excluded, ties favoring
    the earlier move."""
    eligible = [(idx, c) for idx, c in counts.items() if c > 0]
    eligible.sort(key=lambda pair: (-pair[1], pair[0]))
    return frozenset(idx for idx, _ in eligible[:k])


def round_half_up_k(k_fraction: float, n: int) -> int:
    exact = Decimal(str(k_fraction)) * n
    return max(1, int(exact.quantize(Decimal("1"), rounding=ROUND_HALF_UP)))


def build_linkograph(
    moves: list[DesignMove], threshold: float = 0.75, k_fraction: float = 0.10
) -> Linkograph:
    """Links, then the top-k divergent/convergent designations.

    Forward links (i,j) count toward move i, backward toward move j; k is
    round-half-up of k_fraction * N with a floor of 1. Similarity exactly at
    the threshold is not a link.
    """
    if not moves:
        raise InvalidInput("no moves")
    if not 0 < threshold < 1:
        raise InvalidInput(f"threshold {threshold} outside (0,1)")
    if not 0 < k_fraction <= 1:
        raise InvalidInput(f"k_fraction {k_fraction} outside (0,1]")
    if any(m.embedding is None for m in moves):
        raise InvalidInput("moves must be embedded first")
    n = len(moves)
    links = []
    forward = {m.index: 0 for m in moves}
    backward = {m.index: 0 for m in moves}
    for a in range(n):
        for b in range(a + 1, n):
            sim = float(np.dot(moves[a].embedding, moves[b].embedding))
            if sim > threshold:
                i, j = moves[a].index, moves[b].index
                links.append(Link(i=i, j=j, similarity=sim))
                forward[i] += 1
                backward[j] += 1
    k = round_half_up_k(k_fraction, n)
    return Linkograph(
        moves=tuple(moves),
        links=tuple(links),
        threshold=threshold,
        k=k,
        divergent=top_k(k, forward),
        convergent=top_k(k, backward),
    )


def label_ppis(
    linkograph: Linkograph,
    submitted: list[str],
    center_symbol: str,
    match_center: bool = False,
) -> dict[str, DCLabel]:
    """Label each submitted center-target pair by symbol presence.

    A pair is present in divergent thinking when its target symbol occurs
    as a whole token (case-insensitive) in at least one divergent move;
    likewise for convergent. match_center additionally counts moves that
    mention only the center symbol (off by default: a bare center mention
    says nothing about which pair the participant meant).
    """
    if not submitted:
        raise InvalidInput("submitted list is empty")
    move_tokens = {m.index: set(tokenize(m.text)) for m in linkograph.moves}
    center_token = center_symbol.lower()

    def present(indices: frozenset[int], target_token: str) -> bool:
        for idx in indices:
            tokens = move_tokens[idx]
            if target_token in tokens or (match_center and center_token in tokens):
                return True
        return False

    labels = {}
    for target in submitted:
        token = target.lower()
        in_div = present(linkograph.divergent, token)
        in_conv = present(linkograph.convergent, token)
        if in_div and in_conv:
            labels[target] = DCLabel.BOTH
        elif in_div or in_conv:
            labels[target] = DCLabel.EITHER
        else:
            labels[target] = DCLabel.NEITHER
    return labels


def summarize(
    labels: dict[str, DCLabel], confidence: dict[str, float]
) -> dict[str, dict[str, float | int | None]]:
    """Descriptive per-label statistics over the 7-point confidence scores.

    Only targets present in the confidence map enter the means; an empty
    group is an n=0 row, not an error.
    """
    for target, value in confidence.items():
        if not 1 <= value <= 7:
            raise InvalidInput(f"confidence {value} for {target} outside [1,7]")
    table = {}
    for label in DCLabel:
        values = [confidence[t] for t, lab in labels.items() if lab is label and t in confidence]
        table[label.value] = {
            "n": len(values),
            "mean": statistics.fmean(values) if values else None,
            "sd": statistics.pstdev(values) if values else None,
        }
    return table


def report_dict(
    linkograph: Linkograph,
    labels: dict[str, DCLabel] | None = None,
    confidence: dict[str, float] | None = None,
) -> dict:
    """JSON-shaped analysis result used by both the CLI and the API."""
    out = {
        "n_moves": len(linkograph.moves),
        "threshold": linkograph.threshold,
        "k": linkograph.k,
        "moves": [{"index": m.index, "text": m.text} for m in linkograph.moves],
        "links": [[l.i, l.j, l.similarity] for l in linkograph.links],
        "divergent": sorted(linkograph.divergent),
        "convergent": sorted(linkograph.convergent),
    }
    if labels is not None:
        out["labels"] = {target: label.value for target, label in labels.items()}
        counts = {label.value: 0 for label in DCLabel}
        for label in labels.values():
            counts[label.value] += 1
        out["label_counts"] = counts
        if confidence is not None:
            out["summary"] = summarize(labels, confidence)
    return out
