"""Load STRING-format flat files into an indexed protein registry plus
interaction store, and persist/reload versioned snapshots.

The store is an immutable snapshot after ingest: exploration is read-mostly,
so updates go through re-ingest rather than mutation. Scores stay on
STRING's integer 0-1000 scale everywhere; nothing downstream rescales them.
"""

import logging
import pathlib
from dataclasses import dataclass, field

from .errors import (
    MalformedRecord,
    MissingColumns,
    ScoreOutOfRange,
    SnapshotError,
    UnknownProtein,
)

log = logging.getLogger(__name__)

SNAPSHOT_MAGIC = "HPPI1"


@dataclass(frozen=True)
class Protein:
    id: str
    symbol: str
    description: str = ""


@dataclass(frozen=True)
class Interaction:
    a: str
    b: str
    combined_score: int


@dataclass
class InteractionStore:
    proteins: dict[str, Protein] = field(default_factory=dict)
    # canonical (min_id, max_id) -> score
    _edges: dict[tuple[str, str], int] = field(default_factory=dict)
    # adjacency: id -> {other_id: score}
    _adj: dict[str, dict[str, int]] = field(default_factory=dict)
    _by_symbol: dict[str, str] = field(default_factory=dict)

    def add_protein(self, protein: Protein) -> None:
        self.proteins[protein.id] = protein
        # first symbol wins on collision; STRING preferred names are unique
        self._by_symbol.setdefault(protein.symbol.lower(), protein.id)

    def add_edge(self, a: str, b: str, score: int) -> None:
        key = (a, b) if a < b else (b, a)
        old = self._edges.get(key)
        if old is not None and old >= score:
            return
        self._edges[key] = score
        self._adj.setdefault(a, {})[b] = score
        self._adj.setdefault(b, {})[a] = score

    def protein(self, protein_id: str) -> Protein:
        try:
            return self.proteins[protein_id]
        except KeyError:
            raise UnknownProtein(protein_id)

    def resolve(self, symbol_or_id: str) -> Protein:
        """Look up by preferred symbol (case-insensitive), falling back to id."""
        pid = self._by_symbol.get(symbol_or_id.lower())
        if pid is not None:
            return self.proteins[pid]
        if symbol_or_id in self.proteins:
            return self.proteins[symbol_or_id]
        raise UnknownProtein(symbol_or_id)

    def interactions(self) -> list[Interaction]:
        return [Interaction(a, b, s) for (a, b), s in self._edges.items()]

    def score(self, a: str, b: str) -> int | None:
        key = (a, b) if a < b else (b, a)
        return self._edges.get(key)

    def adjacency(self, protein_id: str) -> dict[str, int]:
        return dict(self._adj.get(protein_id, {}))

    @property
    def interaction_count(self) -> int:
        return len(self._edges)

    def symbol_set(self) -> set[str]:
        return {p.symbol for p in self.proteins.values()}

    # -- persistence ------------------------------------------------------

    def save(self, directory: str | pathlib.Path) -> None:
        """Write the snapshot as two sorted, magic-headed TSV files.

        Sorting makes re-ingest byte-identical, so snapshot directories can
        be compared by content hash.
        """
        directory = pathlib.Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        with open(directory / "proteins.tsv", "w") as fh:
            fh.write(f"{SNAPSHOT_MAGIC}\n")
            for pid in sorted(self.proteins):
                p = self.proteins[pid]
                fh.write(f"{p.id}\t{p.symbol}\t{p.description}\n")
        with open(directory / "interactions.tsv", "w") as fh:
            fh.write(f"{SNAPSHOT_MAGIC}\n")
            for (a, b) in sorted(self._edges):
                fh.write(f"{a}\t{b}\t{self._edges[(a, b)]}\n")

    @classmethod
    def load(cls, directory: str | pathlib.Path) -> "InteractionStore":
        directory = pathlib.Path(directory)
        store = cls()
        for fname in ("proteins.tsv", "interactions.tsv"):
            path = directory / fname
            if not path.exists():
                raise SnapshotError(f"snapshot file missing: {path}")
            with open(path) as fh:
                if fh.readline().rstrip("\n") != SNAPSHOT_MAGIC:
                    raise SnapshotError(f"bad magic header in {path}")
                for line_no, line in enumerate(fh, start=2):
                    parts = line.rstrip("\n").split("\t")
                    if fname == "proteins.tsv":
                        if len(parts) < 2:
                            raise SnapshotError(f"{path}:{line_no}: truncated row")
                        store.add_protein(Protein(parts[0], parts[1], parts[2] if len(parts) > 2 else ""))
                    else:
                        if len(parts) != 3:
                            raise SnapshotError(f"{path}:{line_no}: truncated row")
                        try:
                            store.add_edge(parts[0], parts[1], int(parts[2]))
                        except ValueError:
                            raise SnapshotError(f"{path}:{line_no}: non-integer score")
        return store


def _header_index(header_fields: list[str], wanted: list[str], file_label: str) -> list[int]:
    missing = [name for name in wanted if name not in header_fields]
    if missing:
        raise MissingColumns(file_label, missing)
    return [header_fields.index(name) for name in wanted]


def ingest_links(links_text: str, info_text: str) -> InteractionStore:
    """Build a store from STRING protein.links + protein.info file contents.

    Duplicate unordered pairs keep the max score. Self-loops are skipped
    with a warning. Proteins that appear in links but not in info get a
    symbol equal to the id suffix after the taxon prefix.
    """
    store = InteractionStore()

    info_lines = info_text.splitlines()
    if not info_lines:
        raise MissingColumns("info", ["protein_id", "preferred_name"])
    idx_id, idx_name = _header_index(
        info_lines[0].split("\t"), ["protein_id", "preferred_name"], "info"
    )
    idx_annot = info_lines[0].split("\t").index("annotation") if "annotation" in info_lines[0].split("\t") else None
    for line_no, line in enumerate(info_lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) <= max(idx_id, idx_name):
            raise MalformedRecord(line_no, "info row has too few columns")
        description = parts[idx_annot] if idx_annot is not None and len(parts) > idx_annot else ""
        store.add_protein(Protein(parts[idx_id], parts[idx_name], description))

    links_lines = links_text.splitlines()
    if not links_lines:
        raise MissingColumns("links", ["protein1", "protein2", "combined_score"])
    col1, col2, col_score = _header_index(
        links_lines[0].split(), ["protein1", "protein2", "combined_score"], "links"
    )
    self_loops = 0
    for line_no, line in enumerate(links_lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) <= max(col1, col2, col_score):
            raise MalformedRecord(line_no, "links row has too few columns")
        a, b = parts[col1], parts[col2]
        try:
            score = int(parts[col_score])
        except ValueError:
            raise MalformedRecord(line_no, f"score {parts[col_score]!r} is not an integer")
        if not 0 <= score <= 1000:
            raise ScoreOutOfRange(f"combined_score {score} outside [0,1000]", line_no)
        if a == b:
            self_loops += 1
            continue
        for pid in (a, b):
            if pid not in store.proteins:
                suffix = pid.split(".", 1)[-1]
                store.add_protein(Protein(pid, suffix))
        store.add_edge(a, b, score)
    if self_loops:
        log.warning("skipped %d self-loop row(s)", self_loops)
    return store


def neighbors(store: InteractionStore, center: str) -> list[tuple[Protein, int]]:
    """The center's adjacency, scored and ranked.

    Descending combined score; ties broken by ascending symbol then
    ascending id. The center itself never appears.
    """
    if center not in store.proteins:
        raise UnknownProtein(center)
    adjacent = store.adjacency(center)
    ranked = sorted(
        ((store.proteins[pid], score) for pid, score in adjacent.items()),
        key=lambda pair: (-pair[1], pair[0].symbol, pair[0].id),
    )
    return ranked
