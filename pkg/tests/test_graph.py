import math
import pathlib
import random

import pytest
from hypothesis import given, settings, strategies as st

from happier.errors import AffinityOutOfRange, InvalidInput, NoNeighbors, ScoreOutOfRange, UnknownProtein
from happier.graph import (
    EdgeColor,
    NodeColor,
    Subgraph,
    ThicknessTier,
    edge_color,
    node_color,
    partition,
    thickness_tier,
)
from happier.stringdb import InteractionStore, Protein, ingest_links

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

TIER_ORDER = {ThicknessTier.THIN: 0, ThicknessTier.MEDIUM: 1, ThicknessTier.THICK: 2}
COLOR_ORDER = {NodeColor.PINK: 0, NodeColor.ORANGE: 1, NodeColor.PURPLE: 2}


def test_thickness_examples():
    assert thickness_tier(900) is ThicknessTier.THICK
    assert thickness_tier(0) is ThicknessTier.THIN
    assert thickness_tier(333) is ThicknessTier.THIN
    assert thickness_tier(334) is ThicknessTier.MEDIUM
    assert thickness_tier(666) is ThicknessTier.MEDIUM
    assert thickness_tier(667) is ThicknessTier.THICK


def test_thickness_exhaustive_scan():
    previous = ThicknessTier.THIN
    for score in range(0, 1001):
        tier = thickness_tier(score)  # total over domain
        assert TIER_ORDER[tier] >= TIER_ORDER[previous]
        previous = tier
    assert thickness_tier(1000) is ThicknessTier.THICK


def test_thickness_out_of_range():
    for bad in (-1, 1001):
        with pytest.raises(ScoreOutOfRange):
            thickness_tier(bad)


def test_edge_color_rule():
    assert edge_color(0) is EdgeColor.GRAY
    assert edge_color(0.01) is EdgeColor.RED
    assert edge_color(87) is EdgeColor.RED


def test_node_color_examples():
    assert node_color(-0.3) is NodeColor.PURPLE
    assert node_color(-2.5) is NodeColor.PINK
    assert node_color(-0.5) is NodeColor.ORANGE
    assert node_color(-2) is NodeColor.ORANGE
    assert node_color(0) is NodeColor.PURPLE
    assert node_color(-15) is NodeColor.PINK


def test_node_color_grid_scan():
    previous = NodeColor.PINK
    for i in range(0, 1501):
        affinity = -15.0 + i * 0.01
        color = node_color(affinity)
        assert COLOR_ORDER[color] >= COLOR_ORDER[previous]
        previous = color


def test_node_color_out_of_range():
    for bad in (-15.01, 0.01):
        with pytest.raises(AffinityOutOfRange):
            node_color(bad)


def _store_with_neighbors(n, seed=0, extra_edges=0):
    rng = random.Random(seed)
    store = InteractionStore()
    store.add_protein(Protein("C", "CENTER"))
    ids = [f"N{i:03d}" for i in range(n)]
    for pid in ids:
        store.add_protein(Protein(pid, f"S{pid}"))
        store.add_edge("C", pid, rng.randint(0, 1000))
    if n >= 2:
        for _ in range(extra_edges):
            a, b = rng.sample(ids, 2)
            store.add_edge(a, b, rng.randint(0, 1000))
    return store


def test_partition_exact_division():
    subgraphs = partition(_store_with_neighbors(220), "C", 55)
    assert [len(s.members) for s in subgraphs] == [55, 55, 55, 55]


def test_partition_remainder():
    subgraphs = partition(_store_with_neighbors(113), "C", 55)
    assert [len(s.members) for s in subgraphs] == [55, 55, 3]


def test_partition_large_fixture_scale():
    text = (FIXTURES / "mapt_large.links.tsv").read_text()
    center = "9606.ENSP00000340820"
    partners = set()
    for line in text.splitlines()[1:]:
        a, b, _ = line.split()
        if a == center and b != center:
            partners.add(b)
        elif b == center and a != center:
            partners.add(a)
    store = ingest_links(text, (FIXTURES / "mapt_large.info.tsv").read_text())
    subgraphs = partition(store, center)
    assert len(partners) == 500
    assert len(subgraphs) == math.ceil(len(partners) / 55) == 10


def test_partition_errors():
    store = _store_with_neighbors(5)
    with pytest.raises(InvalidInput):
        partition(store, "C", 49)
    with pytest.raises(InvalidInput):
        partition(store, "C", 61)
    with pytest.raises(UnknownProtein):
        partition(store, "missing")
    isolated = InteractionStore()
    isolated.add_protein(Protein("L", "LONE"))
    with pytest.raises(NoNeighbors):
        partition(isolated, "L")


def test_partition_member_member_edges_stay_inside_view():
    store = _store_with_neighbors(120, seed=3)
    # force one edge inside subgraph 1 and one spanning views 1 and 2
    subgraphs = partition(store, "C", 55)
    first, second = subgraphs[0].members, subgraphs[1].members
    store.add_edge(first[0], first[1], 800)
    store.add_edge(first[0], second[0], 900)
    subgraphs = partition(store, "C", 55)
    inner = {(e.a, e.b) for e in subgraphs[0].edges if e.a != "C" and e.b != "C"}
    key = (min(first[0], first[1]), max(first[0], first[1]))
    assert key in inner
    spanning = (min(first[0], second[0]), max(first[0], second[0]))
    for sub in subgraphs:
        pairs = {(e.a, e.b) for e in sub.edges}
        assert spanning not in pairs
        for e in sub.edges:
            scope = set(sub.members) | {"C"}
            assert e.a in scope and e.b in scope


def test_partition_deterministic():
    store = _store_with_neighbors(230, seed=7, extra_edges=60)
    assert partition(store, "C") == partition(store, "C")


@settings(max_examples=25, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=200),
    chunk_target=st.integers(min_value=50, max_value=60),
    seed=st.integers(min_value=0, max_value=10_000),
)
def test_partition_invariants(n, chunk_target, seed):
    store = _store_with_neighbors(n, seed=seed, extra_edges=min(n, 40))
    subgraphs = partition(store, "C", chunk_target)
    assert len(subgraphs) == math.ceil(n / chunk_target)
    seen: set[str] = set()
    center_score = {pid: s for pid, s in store.adjacency("C").items()}
    for i, sub in enumerate(subgraphs):
        assert sub.index == i + 1
        assert not (set(sub.members) & seen)
        seen.update(sub.members)
        if i < len(subgraphs) - 1:
            assert len(sub.members) == chunk_target
        else:
            assert 1 <= len(sub.members) <= chunk_target
        if i > 0:
            prev_min = min(center_score[m] for m in subgraphs[i - 1].members)
            this_max = max(center_score[m] for m in sub.members)
            assert prev_min >= this_max
    assert seen == set(center_score)


def test_subgraph_is_frozen():
    sub = partition(_store_with_neighbors(60), "C")[0]
    assert isinstance(sub, Subgraph)
    with pytest.raises(AttributeError):
        sub.index = 9  # type: ignore[misc]
