import hashlib
import pathlib

import pytest
from hypothesis import given, strategies as st

from happier.errors import MissingColumns, ScoreOutOfRange, SnapshotError, UnknownProtein
from happier.stringdb import InteractionStore, Protein, ingest_links, neighbors

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

INFO_AB = "protein_id\tpreferred_name\tprotein_size\tannotation\nA\tALPHA\t100\tx\nB\tBETA\t100\ty\n"


def test_symmetric_duplicate_collapses():
    links = "protein1 protein2 combined_score\nA B 900\nB A 900\n"
    store = ingest_links(links, INFO_AB)
    assert store.interaction_count == 1
    assert store.score("A", "B") == 900


def test_self_loop_skipped():
    links = "protein1 protein2 combined_score\nA A 500\n"
    store = ingest_links(links, INFO_AB)
    assert store.interaction_count == 0


def test_duplicate_keeps_max():
    links = "protein1 protein2 combined_score\nA B 300\nB A 700\nA B 500\n"
    store = ingest_links(links, INFO_AB)
    assert store.score("A", "B") == 700


def test_missing_columns():
    with pytest.raises(MissingColumns):
        ingest_links("protein1 protein2\nA B\n", INFO_AB)
    with pytest.raises(MissingColumns):
        ingest_links("protein1 protein2 combined_score\n", "protein_id\tsize\n")


def test_score_out_of_range_reports_line():
    links = "protein1 protein2 combined_score\nA B 900\nA B 1400\n"
    with pytest.raises(ScoreOutOfRange) as err:
        ingest_links(links, INFO_AB)
    assert err.value.line_no == 3


def _fixture_store(prefix="mapt_neighborhood"):
    return ingest_links(
        (FIXTURES / f"{prefix}.links.tsv").read_text(),
        (FIXTURES / f"{prefix}.info.tsv").read_text(),
    )


def test_fixture_dedup_matches_one_pass_oracle():
    text = (FIXTURES / "mapt_neighborhood.links.tsv").read_text()
    pairs = set()
    for line in text.splitlines()[1:]:
        a, b, _ = line.split()
        if a != b:
            pairs.add((min(a, b), max(a, b)))
    store = _fixture_store()
    assert store.interaction_count == len(pairs)


def test_symbol_fallback_is_id_suffix():
    store = _fixture_store()
    # fixture intentionally omits two link-referenced proteins from info
    fallbacks = [p for p in store.proteins.values() if p.symbol.startswith("ENSP")]
    assert len(fallbacks) == 2
    for p in fallbacks:
        assert p.id == f"9606.{p.symbol}"


def test_resolve_case_insensitive():
    store = _fixture_store()
    assert store.resolve("mapt").symbol == "MAPT"
    assert store.resolve("MAPT").id == "9606.ENSP00000340820"
    with pytest.raises(UnknownProtein):
        store.resolve("ZZZZ9")


def test_neighbors_empty_for_isolated():
    info = INFO_AB + "C\tGAMMA\t100\tz\n"
    store = ingest_links("protein1 protein2 combined_score\nA B 900\n", info)
    assert neighbors(store, "C") == []


def test_neighbors_tie_break():
    info = (
        "protein_id\tpreferred_name\tprotein_size\tannotation\n"
        "C\tCENTER\t1\t.\nX\tAAX\t1\t.\nY\tAAY\t1\t.\nZ\tZED\t1\t.\n"
    )
    links = "protein1 protein2 combined_score\nC X 700\nC Y 700\nC Z 900\n"
    ranked = neighbors(ingest_links(links, info), "C")
    assert [p.id for p, _ in ranked] == ["Z", "X", "Y"]


def test_neighbors_unknown_center():
    with pytest.raises(UnknownProtein):
        neighbors(_fixture_store(), "nope")


def test_fixture_first_neighbor_has_max_score():
    text = (FIXTURES / "mapt_neighborhood.links.tsv").read_text()
    center = "9606.ENSP00000340820"
    best = 0
    for line in text.splitlines()[1:]:
        a, b, s = line.split()
        if center in (a, b) and a != b:
            best = max(best, int(s))
    store = _fixture_store()
    ranked = neighbors(store, center)
    assert ranked[0][1] == best
    assert center not in [p.id for p, _ in ranked]


def test_ingest_idempotent():
    s1, s2 = _fixture_store(), _fixture_store()
    assert s1.proteins == s2.proteins
    assert sorted(s1.interactions(), key=lambda i: (i.a, i.b)) == sorted(
        s2.interactions(), key=lambda i: (i.a, i.b)
    )


def test_interaction_invariants_after_ingest():
    store = _fixture_store("mapt_large")
    for inter in store.interactions():
        assert inter.a != inter.b
        assert 0 <= inter.combined_score <= 1000


@st.composite
def random_stores(draw):
    n = draw(st.integers(min_value=2, max_value=20))
    ids = [f"P{i:02d}" for i in range(n)]
    symbols = draw(
        st.lists(st.text(alphabet="ABCDEF", min_size=1, max_size=3), min_size=n, max_size=n)
    )
    edges = draw(
        st.lists(
            st.tuples(
                st.integers(min_value=1, max_value=n - 1),
                st.integers(min_value=0, max_value=1000),
            ),
            max_size=30,
        )
    )
    store = InteractionStore()
    for pid, sym in zip(ids, symbols):
        store.add_protein(Protein(pid, sym))
    for other, score in edges:
        store.add_edge(ids[0], ids[other], score)
    return store, ids[0]


@given(random_stores())
def test_neighbors_is_sorted_permutation(case):
    store, center = case
    ranked = neighbors(store, center)
    adjacency = store.adjacency(center)
    assert {p.id for p, _ in ranked} == set(adjacency)
    assert dict((p.id, s) for p, s in ranked) == adjacency
    keys = [(-s, p.symbol, p.id) for p, s in ranked]
    assert keys == sorted(keys)


def test_snapshot_round_trip(tmp_path):
    store = _fixture_store()
    store.save(tmp_path / "db")
    loaded = InteractionStore.load(tmp_path / "db")
    assert loaded.proteins == store.proteins
    assert sorted(loaded.interactions(), key=lambda i: (i.a, i.b)) == sorted(
        store.interactions(), key=lambda i: (i.a, i.b)
    )


def test_snapshot_deterministic_bytes(tmp_path):
    store = _fixture_store()
    hashes = []
    for d in ("one", "two"):
        store.save(tmp_path / d)
        blob = (tmp_path / d / "proteins.tsv").read_bytes() + (tmp_path / d / "interactions.tsv").read_bytes()
        hashes.append(hashlib.sha256(blob).hexdigest())
    assert hashes[0] == hashes[1]


def test_snapshot_bad_magic(tmp_path):
    store = _fixture_store()
    store.save(tmp_path / "db")
    target = tmp_path / "db" / "proteins.tsv"
    target.write_text("NOPE\n" + "\n".join(target.read_text().splitlines()[1:]))
    with pytest.raises(SnapshotError):
        InteractionStore.load(tmp_path / "db")


def test_snapshot_missing_file(tmp_path):
    with pytest.raises(SnapshotError):
        InteractionStore.load(tmp_path / "empty")
