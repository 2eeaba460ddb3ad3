#!/usr/bin/env python3
"""Construct the frozen STRING-format fixtures under tests/fixtures/.

Two neighborhoods around MAPT:
  - mapt_neighborhood: exactly 300 link rows including reverse-orientation
    duplicates with differing scores, one self-loop, and two proteins left
    out of the info file (symbol fallback path).
  - mapt_large: exactly 500 distinct neighbors plus member-member edges,
    fully covered by the info file.

Deterministic (fixed seed); re-running reproduces the files byte for byte.
"""

import pathlib
import random

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"

CENTER_ID = "9606.ENSP00000340820"
CENTER_SYMBOL = "MAPT"

REAL_SYMBOLS = [
    "BRSK1", "BRSK2", "CDK5", "GSK3B", "FYN", "SRC", "STX1A", "CDC37",
    "HSP90AA1", "YWHAZ", "YWHAB", "SNCA", "APP", "PSEN1", "BIN1", "CLU",
    "PICALM", "CD2AP", "EPHA4", "ABL1", "LRRK2", "CSNK1D", "CSNK1E",
    "MARK1", "MARK2", "MARK3", "MARK4", "DYRK1A", "CAMK2A", "PRKACA",
    "PPP2CA", "PPP3CA", "PIN1", "FKBP5", "STUB1", "HSPA8", "HSPA4",
    "DNAJB1", "BAG2", "SQSTM1", "KEAP1", "TTBK1", "TTBK2", "SGK1",
]

ANNOTATIONS = [
    "serine/threonine-protein kinase",
    "molecular chaperone binding partner",
    "synaptic vesicle trafficking factor",
    "microtubule-associated regulator",
    "ubiquitin ligase adaptor",
    "uncharacterized protein",
]


def make_proteins(n: int) -> list[tuple[str, str]]:
    """(id, symbol) for n neighbor proteins; real symbols first."""
    out = []
    for i in range(n):
        pid = f"9606.ENSP{i + 1:011d}"
        symbol = REAL_SYMBOLS[i] if i < len(REAL_SYMBOLS) else f"ZNF{400 + i}"
        out.append((pid, symbol))
    return out


def write_info(path, proteins, rng, skip_ids=()):
    with open(path, "w") as fh:
        fh.write("protein_id\tpreferred_name\tprotein_size\tannotation\n")
        fh.write(f"{CENTER_ID}\t{CENTER_SYMBOL}\t758\tmicrotubule-associated protein tau\n")
        for pid, symbol in proteins:
            if pid in skip_ids:
                continue
            size = rng.randint(100, 800)
            fh.write(f"{pid}\t{symbol}\t{size}\t{rng.choice(ANNOTATIONS)}\n")


def build_neighborhood():
    rng = random.Random(11)
    proteins = make_proteins(110)
    rows = []
    center_scores = {}
    for pid, _ in proteins:
        score = rng.randint(150, 999)
        center_scores[pid] = score
        rows.append(f"{CENTER_ID} {pid} {score}")
    # reverse-orientation duplicates with a different (lower) score: max wins
    dup_ids = [proteins[i][0] for i in range(0, 20, 2)]
    for pid in dup_ids:
        rows.append(f"{pid} {CENTER_ID} {max(center_scores[pid] - 50, 0)}")
    rows.append(f"{CENTER_ID} {CENTER_ID} 500")  # self-loop, skipped at ingest
    # member-member edges to reach exactly 300 rows
    seen = set()
    while len(rows) < 300:
        a, _ = rng.choice(proteins)
        b, _ = rng.choice(proteins)
        if a == b or (min(a, b), max(a, b)) in seen:
            continue
        seen.add((min(a, b), max(a, b)))
        rows.append(f"{a} {b} {rng.randint(150, 999)}")
    rng.shuffle(rows)
    assert len(rows) == 300
    with open(FIXTURES / "mapt_neighborhood.links.tsv", "w") as fh:
        fh.write("protein1 protein2 combined_score\n")
        fh.write("\n".join(rows) + "\n")
    # two proteins intentionally missing from info: symbol falls back to id suffix
    write_info(
        FIXTURES / "mapt_neighborhood.info.tsv",
        proteins,
        random.Random(12),
        skip_ids={proteins[-1][0], proteins[-2][0]},
    )


def build_large():
    rng = random.Random(21)
    proteins = make_proteins(500)
    rows = []
    for pid, _ in proteins:
        rows.append(f"{CENTER_ID} {pid} {rng.randint(150, 999)}")
    seen = set()
    added = 0
    while added < 800:
        a, _ = rng.choice(proteins)
        b, _ = rng.choice(proteins)
        if a == b or (min(a, b), max(a, b)) in seen:
            continue
        seen.add((min(a, b), max(a, b)))
        rows.append(f"{a} {b} {rng.randint(150, 999)}")
        added += 1
    rng.shuffle(rows)
    with open(FIXTURES / "mapt_large.links.tsv", "w") as fh:
        fh.write("protein1 protein2 combined_score\n")
        fh.write("\n".join(rows) + "\n")
    write_info(FIXTURES / "mapt_large.info.tsv", proteins, random.Random(22))


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)
    build_neighborhood()
    build_large()
    print("wrote mapt_neighborhood.{links,info}.tsv and mapt_large.{links,info}.tsv")


if __name__ == "__main__":
    main()
