"""Partition a center protein's neighborhood into ranked subgraph views and
map raw scores onto the legend's categorical encodings.

Legend boundaries are deliberately kept in one constant table each so the
cutoffs stay greppable and trivially changeable.
"""

import math
from dataclasses import dataclass
from enum import Enum

from .errors import AffinityOutOfRange, InvalidInput, NoNeighbors, ScoreOutOfRange
from .stringdb import Interaction, InteractionStore, neighbors


class ThicknessTier(str, Enum):
    THIN = "Thin"
    MEDIUM = "Medium"
    THICK = "Thick"


class EdgeColor(str, Enum):
    RED = "Red"
    GRAY = "Gray"


class NodeColor(str, Enum):
    PURPLE = "Purple"
    ORANGE = "Orange"
    PINK = "Pink"


class CriteriaLayer(str, Enum):
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"


# combined_score bins: upper bound (inclusive) -> tier
THICKNESS_BINS = ((333, ThicknessTier.THIN), (666, ThicknessTier.MEDIUM), (1000, ThicknessTier.THICK))

# affinity bins, strongest (most negative) last; -0.5 and -2 land in the
# middle band (closed interval)
AFFINITY_PURPLE_ABOVE = -0.5
AFFINITY_PINK_BELOW = -2.0
AFFINITY_MIN, AFFINITY_MAX = -15.0, 0.0


def thickness_tier(combined_score: int) -> ThicknessTier:
    if not 0 <= combined_score <= 1000:
        raise ScoreOutOfRange(f"combined_score {combined_score} outside [0,1000]")
    for bound, tier in THICKNESS_BINS:
        if combined_score <= bound:
            return tier
    raise AssertionError("unreachable")


def edge_color(pathway_score: float) -> EdgeColor:
    return EdgeColor.RED if pathway_score > 0 else EdgeColor.GRAY


def node_color(affinity: float) -> NodeColor:
    if not AFFINITY_MIN <= affinity <= AFFINITY_MAX:
        raise AffinityOutOfRange(f"affinity {affinity} outside [{AFFINITY_MIN},{AFFINITY_MAX}]")
    if affinity > AFFINITY_PURPLE_ABOVE:
        return NodeColor.PURPLE
    if affinity < AFFINITY_PINK_BELOW:
        return NodeColor.PINK
    return NodeColor.ORANGE


@dataclass(frozen=True)
class Subgraph:
    index: int  # 1-based
    center: str
    members: tuple[str, ...]  # rank order, excludes center
    edges: tuple[Interaction, ...]


def partition(store: InteractionStore, center: str, chunk_target: int = 55) -> list[Subgraph]:
    """Chunk the ranked neighborhood into consecutive subgraphs.

    Each view holds chunk_target members except the last, which takes the
    remainder. A view's edge set is the center-member edges plus every
    member-member edge the store knows about within that view; edges never
    cross views.
    """
    if not 50 <= chunk_target <= 60:
        raise InvalidInput(f"chunk_target {chunk_target} outside [50,60]")
    ranked = neighbors(store, center)  # raises UnknownProtein
    if not ranked:
        raise NoNeighbors(center)
    out: list[Subgraph] = []
    for chunk_i in range(math.ceil(len(ranked) / chunk_target)):
        chunk = ranked[chunk_i * chunk_target : (chunk_i + 1) * chunk_target]
        members = tuple(p.id for p, _ in chunk)
        member_set = set(members)
        edges = [Interaction(center, pid, score) for pid, score in ((p.id, s) for p, s in chunk)]
        inner = set()
        for pid in members:
            for other, score in store.adjacency(pid).items():
                if other in member_set and pid < other:
                    inner.add((pid, other, score))
        edges.extend(Interaction(a, b, s) for a, b, s in sorted(inner))
        out.append(Subgraph(index=chunk_i + 1, center=center, members=members, edges=tuple(edges)))
    return out
