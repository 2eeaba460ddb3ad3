#!/usr/bin/env python3
"""Construct the frozen criteria-provider fixtures under tests/fixtures/:
a small literature corpus (plain text, first line = title) and a 20-row
affinity table spanning all three node-color bands including both
boundary values.
"""

import pathlib

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"

CORPUS = {
    "tau_kinases.txt": [
        "Kinase regulation of tau phosphorylation",
        "BRSK1 phosphorylates MAPT by regulating microtubule dynamics.",
        "BRSK2 shares substrate preference with BRSK1 but lacks MAPT evidence in vivo.",
        "CDK5 phosphorylates MAPT at serine 202 and threonine 205.",
        "GSK3B phosphorylates MAPT downstream of priming by CDK5.",
        "DYRK1A primes tau for subsequent phosphorylation.",
        "MARK2 phosphorylates MAPT within the microtubule binding repeats.",
    ],
    "chaperones.txt": [
        "Chaperone handling of misfolded tau",
        "HSP90AA1 stabilizes misfolded tau intermediates.",
        "CDC37 cooperates with HSP90AA1 in kinase maturation.",
        "STUB1 ubiquitinates MAPT and routes it to degradation.",
        "HSPA8 binds tau but does not phosphorylate MAPT.",
    ],
    "synapse.txt": [
        "Synaptic proteins unrelated to tau pathology",
        "STX1A mediates synaptic vesicle fusion.",
        "SNCA aggregates in presynaptic terminals.",
        "FYN and SRC stabilize microtubules through tubulin binding.",
    ],
}

# symbol -> affinity; covers Purple (> -0.5), Orange ([-2, -0.5]) including
# both boundaries, and Pink (< -2)
AFFINITIES = [
    ("BRSK1", -0.3),
    ("BRSK2", -1.2),
    ("CDK5", -2.5),
    ("GSK3B", -0.5),
    ("FYN", -2.0),
    ("SRC", -0.49),
    ("STX1A", -3.75),
    ("CDC37", -0.1),
    ("HSP90AA1", -14.9),
    ("YWHAZ", -1.99),
    ("SNCA", -2.01),
    ("APP", 0.0),
    ("MARK1", -0.75),
    ("MARK2", -6.5),
    ("DYRK1A", -0.51),
    ("PIN1", -0.25),
    ("STUB1", -2.2),
    ("HSPA8", -1.0),
    ("TTBK1", -12.25),
    ("SGK1", -0.4),
]


def main():
    corpus_dir = FIXTURES / "corpus"
    corpus_dir.mkdir(parents=True, exist_ok=True)
    for fname, lines in CORPUS.items():
        (corpus_dir / fname).write_text("\n".join(lines) + "\n")
    assert len(AFFINITIES) == 20
    with open(FIXTURES / "affinities.tsv", "w") as fh:
        fh.write("protein\taffinity\n")
        for symbol, affinity in AFFINITIES:
            fh.write(f"{symbol}\t{affinity}\n")
    print(f"wrote corpus/ ({len(CORPUS)} docs) and affinities.tsv ({len(AFFINITIES)} rows)")


if __name__ == "__main__":
    main()
