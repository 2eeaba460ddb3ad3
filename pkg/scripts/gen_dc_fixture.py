#!/usr/bin/env python3
"""Construct and pre-verify the five-participant replay fixture under
tests/fixtures/dc_replay/.

Each participant transcript is built from a 12-move "hub" (moves sharing
four core tokens, so every hub pair links at cosine 4/5 = 0.8) placed among
32 filler moves whose tokens are unique within the participant (cross
cosines at most 0.25). Forward-link counts then decrease strictly down the
hub, which pins the divergent set to the first four hub moves and the
convergent set to the last four, tie-free.

Target symbols are planted so the five participants submit 47 pairs that
label exactly 9 Both / 10 Either / 28 Neither. A standalone brute-force
linkograph (reimplemented here, no package imports) verifies every
participant's divergent set, convergent set, and label map before any file
is written; expected.json freezes the verified outcome.
"""

import json
import math
import pathlib
import random
import re

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "dc_replay"

N_MOVES = 44  # per participant; k = round_half_up(4.4) = 4
HUB_POSITIONS = [1, 4, 8, 12, 15, 19, 23, 26, 30, 34, 38, 42]  # 12 slots, 1-based
THRESHOLD = 0.75
K_FRACTION = 0.10
DIM = 512

SYMBOLS = [
    "BRSK1", "BRSK2", "CDK5", "GSK3B", "FYN", "SRC", "STX1A", "CDC37",
    "HSP90AA1", "YWHAZ", "YWHAB", "SNCA", "APP", "PSEN1", "BIN1", "CLU",
    "PICALM", "CD2AP", "EPHA4", "ABL1", "LRRK2", "CSNK1D", "CSNK1E",
    "MARK1", "MARK2", "MARK3", "MARK4", "DYRK1A", "CAMK2A", "PRKACA",
    "PPP2CA", "PPP3CA", "PIN1", "FKBP5", "STUB1", "HSPA8", "HSPA4",
    "DNAJB1", "BAG2", "SQSTM1", "KEAP1", "TTBK1", "TTBK2", "SGK1",
    "PLK2", "NUAK1", "SIK2",
]

CORES = {
    "p1": ("okay", "this", "subgraph", "shows"),
    "p2": ("now", "the", "cluster", "highlights"),
    "p3": ("hmm", "that", "region", "features"),
    "p4": ("so", "our", "view", "includes"),
    "p5": ("well", "another", "group", "contains"),
}

# (submitted, n_both, n_either, neither placement: singles, middle-hub, absent)
PLAN = {
    "p1": (10, 2, 2, (4, 1, 1)),
    "p2": (9, 2, 2, (4, 0, 1)),
    "p3": (10, 2, 2, (5, 1, 0)),
    "p4": (9, 2, 2, (5, 0, 0)),
    "p5": (9, 1, 2, (4, 1, 1)),
}

VOCAB = """
affinity docking pose panel detail bookmark legend slider layer toggle
threshold boundary column row table score ranking candidate kinase enzyme
binding pocket residue loop helix sheet domain motif terminal tail
pathway cascade signal receptor channel transporter complex dimer monomer
substrate inhibitor activator cofactor scaffold anchor adapter chaperone
neuron synapse axon dendrite plaque tangle filament fibril aggregate
membrane vesicle endosome lysosome nucleus cytosol matrix gradient flux
compare inspect zoom rotate drag hover click scroll filter sort
maybe perhaps interesting surprising unclear obvious faint strong weak dense
sparse thick thin red gray purple orange pink bright dim
first second third next previous last early late quick slow
check note mark skip revisit confirm reject accept doubt trust
wonder guess suspect recall forget notice compare2 contrast evaluate measure
deep shallow wide narrow near far above below inside outside
paper excerpt reference evidence citation abstract figure caption axis label2
water lipid sugar salt buffer solvent crystal powder sample batch
morning afternoon setup session monitor keyboard window screen mouse cable
idea plan goal step phase stage round trial attempt finish
high low medium top bottom left right center edge corner
""".split()


def tokenize(text: str) -> list[str]:
    return re.findall(r"[a-z0-9]+", text.lower())


def fnv1a64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for b in data:
        h = ((h ^ b) * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def brute_force_analysis(move_texts, submitted):
    """Independent linkograph: dict-based embeddings, O(N^2) loops."""
    vectors = []
    for text in move_texts:
        vec: dict[int, float] = {}
        for token in tokenize(text):
            bucket = fnv1a64(token.encode()) % DIM
            vec[bucket] = vec.get(bucket, 0.0) + 1.0
        norm = math.sqrt(sum(v * v for v in vec.values()))
        vectors.append({b: v / norm for b, v in vec.items()} if norm else {})
    n = len(move_texts)
    forward = [0] * (n + 1)
    backward = [0] * (n + 1)
    links = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            vi, vj = vectors[i - 1], vectors[j - 1]
            if len(vj) < len(vi):
                vi, vj = vj, vi
            sim = sum(v * vj.get(b, 0.0) for b, v in vi.items())
            if sim > THRESHOLD:
                links.append((i, j))
                forward[i] += 1
                backward[j] += 1
    k = math.floor(K_FRACTION * n + 0.5)  # round half up, positive input
    k = max(1, k)

    def designate(counts):
        ranked = sorted(
            (idx for idx in range(1, n + 1) if counts[idx] > 0),
            key=lambda idx: (-counts[idx], idx),
        )
        return set(ranked[:k])

    divergent, convergent = designate(forward), designate(backward)
    labels = {}
    for target in submitted:
        token = target.lower()
        in_div = any(token in tokenize(move_texts[i - 1]) for i in divergent)
        in_conv = any(token in tokenize(move_texts[i - 1]) for i in convergent)
        labels[target] = "BothDC" if in_div and in_conv else "EitherDC" if in_div or in_conv else "NeitherDC"
    return {"k": k, "links": links, "divergent": divergent, "convergent": convergent, "labels": labels}


def build_participant(pid, symbols, rng):
    """Returns (move_texts, submitted, expected_labels)."""
    submitted_n, n_both, n_either, (nei_single, nei_hub, nei_absent) = PLAN[pid]
    n_neither = submitted_n - n_both - n_either
    assert n_neither == nei_single + nei_hub + nei_absent
    cursor = 0

    def take(count):
        nonlocal cursor
        chunk = symbols[cursor : cursor + count]
        cursor += count
        return chunk

    both = take(n_both)
    either = take(n_either)
    neither = take(n_neither)
    submitted = both + either + neither
    core = CORES[pid]

    pool = [w for w in VOCAB]
    rng.shuffle(pool)
    for word in core:
        assert word not in pool

    # hub slot texts: t=1..12; divergent will be t1..4, convergent t9..12
    hub_unique: dict[int, str] = {}
    for idx, symbol in enumerate(both):
        hub_unique[1 + idx] = symbol
        hub_unique[12 - idx] = symbol
    div_free = [t for t in (1, 2, 3, 4) if t not in hub_unique]
    conv_free = [t for t in (12, 11, 10, 9) if t not in hub_unique]
    for idx, symbol in enumerate(either):
        # alternate: even index plants in a divergent slot, odd in convergent
        if idx % 2 == 0 and div_free:
            hub_unique[div_free.pop(0)] = symbol
        else:
            hub_unique[conv_free.pop(0)] = symbol
    middle_free = [5, 6, 7, 8]
    neither_hub = neither[nei_single : nei_single + nei_hub]
    for symbol in neither_hub:
        hub_unique[middle_free.pop(1)] = symbol
    for t in range(1, 13):
        if t not in hub_unique:
            hub_unique[t] = pool.pop()

    def sentence(words):
        joined = " ".join(words)
        return joined[:1].upper() + joined[1:] + "."

    hub_texts = {t: sentence(core + (hub_unique[t],)) for t in range(1, 13)}

    neither_single = neither[:nei_single]
    singles = []
    for i in range(N_MOVES - 12):
        words = [pool.pop() for _ in range(rng.randint(4, 6))]
        if i < len(neither_single):
            words.insert(rng.randint(1, len(words) - 1), neither_single[i])
        singles.append(sentence(words))
    rng.shuffle(singles)

    moves = []
    hub_t = 0
    for position in range(1, N_MOVES + 1):
        if position in HUB_POSITIONS:
            hub_t += 1
            moves.append(hub_texts[hub_t])
        else:
            moves.append(singles.pop())

    expected = {}
    for s in both:
        expected[s] = "BothDC"
    for s in either:
        expected[s] = "EitherDC"
    for s in neither:
        expected[s] = "NeitherDC"
    return moves, submitted, expected, cursor


def main():
    lowered = {w for w in VOCAB}
    assert len(lowered) == len(VOCAB), "duplicate vocab word"
    assert not lowered & {s.lower() for s in SYMBOLS}, "vocab collides with a symbol"
    for core in CORES.values():
        assert not set(core) & lowered

    OUT.mkdir(parents=True, exist_ok=True)
    rng = random.Random(2024)
    offset = 0
    expected_all = {}
    totals = {"BothDC": 0, "EitherDC": 0, "NeitherDC": 0}
    hub_div = {HUB_POSITIONS[i] for i in range(4)}
    hub_conv = {HUB_POSITIONS[i] for i in (8, 9, 10, 11)}
    for pid in PLAN:
        moves, submitted, expected, used = build_participant(pid, SYMBOLS[offset:], rng)
        offset += used
        result = brute_force_analysis(moves, submitted)
        assert result["k"] == 4, (pid, result["k"])
        assert result["divergent"] == hub_div, (pid, sorted(result["divergent"]))
        assert result["convergent"] == hub_conv, (pid, sorted(result["convergent"]))
        assert result["labels"] == expected, (pid, result["labels"], expected)
        (OUT / f"{pid}_transcript.txt").write_text("\n".join(moves) + "\n")
        (OUT / f"{pid}_submitted.csv").write_text(",".join(submitted) + "\n")
        expected_all[pid] = {"labels": expected, "divergent": sorted(result["divergent"]),
                             "convergent": sorted(result["convergent"]), "k": result["k"]}
        for label in expected.values():
            totals[label] += 1
    assert offset == 47 == sum(totals.values()), (offset, totals)
    assert totals == {"BothDC": 9, "EitherDC": 10, "NeitherDC": 28}, totals

    conf_rng = random.Random(7)
    confidence = {}
    for pid, info in expected_all.items():
        for target, label in info["labels"].items():
            base = {"BothDC": (6, 7), "EitherDC": (4, 6), "NeitherDC": (2, 5)}[label]
            confidence[target] = conf_rng.randint(*base)
    with open(OUT / "confidence.tsv", "w") as fh:
        fh.write("target\tconfidence\n")
        for target in sorted(confidence):
            fh.write(f"{target}\t{confidence[target]}\n")

    (OUT / "expected.json").write_text(json.dumps({"participants": expected_all, "totals": totals}, indent=1))
    print(f"verified and wrote 5 transcripts, totals {totals}")


if __name__ == "__main__":
    main()
