#!/usr/bin/env python3
"""Construct the frozen chemistry fixtures under tests/fixtures/.

Builds a 50-atom two-chain peptide fragment in PDB v3.3 fixed-width layout
and a 26-heavy-atom purine ligand molfile (V2000). Files are deterministic;
re-running the script reproduces them byte for byte. Internal consistency
(serial sequence, element tallies, ring count) is asserted before writing.
"""

import math
import pathlib

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"

# Backbone-plus-CB templates per residue; coordinates are a synthetic helix,
# not crystallographic.
CHAIN_A = ["VAL", "GLN", "ILE", "VAL", "TYR", "LYS", "PRO"]
CHAIN_B = ["VAL", "GLN", "ILE", "VAL", "TYR"]

BACKBONE = [("N", "N"), ("CA", "C"), ("C", "C"), ("O", "O")]


def _pdb_line(serial, name, resname, chain, resseq, x, y, z, element):
    name_field = f" {name:<3s}" if len(name) < 4 else name
    return (
        f"ATOM  {serial:5d} {name_field} {resname:>3s} {chain}{resseq:4d}"
        f"    {x:8.3f}{y:8.3f}{z:8.3f}  1.00  0.00          {element:>2s}"
    )


def build_pdb() -> str:
    lines = [
        "HEADER    PROTEIN FIBRIL                          12-JUL-23   8P34",
        "TITLE     TAU FILAMENT FRAGMENT",
        "REMARK   2 RESOLUTION. 2.30 ANGSTROMS.",
    ]
    serial = 0
    # Elements left blank on these serials to exercise name-based inference.
    blank_element = {7, 23, 41}
    for chain, residues, z_base in (("A", CHAIN_A, 0.0), ("B", CHAIN_B, 12.0)):
        for res_i, resname in enumerate(residues, start=1):
            atom_names = list(BACKBONE)
            # two CB atoms in chain A pad the fragment to exactly 50 atoms
            if chain == "A" and res_i in (1, 5):
                atom_names.append(("CB", "C"))
            for atom_i, (name, element) in enumerate(atom_names):
                serial += 1
                t = serial * 0.35
                x = 11.0 + 2.3 * math.cos(t)
                y = 13.0 + 2.3 * math.sin(t)
                z = z_base + 1.5 * res_i + 0.4 * atom_i
                shown = "" if serial in blank_element else element
                lines.append(_pdb_line(serial, name, resname, chain, res_i, x, y, z, shown))
        lines.append(f"TER   {serial + 1:5d}      {residues[-1]:>3s} {chain}{len(residues):4d}")
    lines.append("END")

    atom_lines = [ln for ln in lines if ln.startswith("ATOM")]
    assert len(atom_lines) == 50, len(atom_lines)
    serials = [int(ln[6:11]) for ln in atom_lines]
    assert serials == list(range(1, 51))
    return "\n".join(lines) + "\n"


# Purine bicycle N1 C2 N3 C4 C5 C6 / C4 C5 N7 C8 N9, then the three
# substituents: C2-NH-CH(CH2OH)(Et), C6-NH-CH2-phenyl, N9-isopropyl.
LIGAND_ATOMS = [
    # (element, substituent anchor comment noted inline)
    "N", "C", "N", "C", "C", "C",       # 1-6   six-membered ring
    "N", "C", "N",                      # 7-9   five-membered ring (with C4, C5)
    "N", "C", "C", "O", "C", "C",       # 10-15 hydroxyethyl/ethyl amine arm
    "N", "C",                           # 16-17 benzylamino linker
    "C", "C", "C", "C", "C", "C",       # 18-23 phenyl
    "C", "C", "C",                      # 24-26 isopropyl
]

LIGAND_BONDS = [
    (1, 2, 2), (2, 3, 1), (3, 4, 2), (4, 5, 1), (5, 6, 2), (6, 1, 1),
    (5, 7, 1), (7, 8, 2), (8, 9, 1), (9, 4, 1),
    (2, 10, 1), (10, 11, 1), (11, 12, 1), (12, 13, 1), (11, 14, 1), (14, 15, 1),
    (6, 16, 1), (16, 17, 1), (17, 18, 1),
    (18, 19, 2), (19, 20, 1), (20, 21, 2), (21, 22, 1), (22, 23, 2), (23, 18, 1),
    (9, 24, 1), (24, 25, 1), (24, 26, 1),
]


def _ligand_coords() -> list[tuple[float, float, float]]:
    coords: dict[int, tuple[float, float, float]] = {}
    for i in range(6):  # hexagon, 1.39 Å edges
        ang = math.pi / 6 + i * math.pi / 3
        coords[i + 1] = (1.39 * math.cos(ang), 1.39 * math.sin(ang), 0.0)
    for j, idx in enumerate((7, 8, 9)):  # fused pentagon off C4-C5
        ang = -math.pi / 2 - j * 0.7
        coords[idx] = (2.2 * math.cos(ang) + 0.7, 2.2 * math.sin(ang) - 0.4, 0.05)
    arm = [(10, -1.2, 2.4), (11, -2.1, 3.3), (12, -3.5, 3.0), (13, -4.4, 4.0), (14, -1.9, 4.8), (15, -3.0, 5.7)]
    for idx, x, y in arm:
        coords[idx] = (x, y, 0.3)
    coords[16] = (2.6, 2.2, -0.2)
    coords[17] = (3.9, 2.9, -0.1)
    for i in range(6):  # phenyl
        ang = i * math.pi / 3
        coords[18 + i] = (5.3 + 1.39 * math.cos(ang), 3.6 + 1.39 * math.sin(ang), -0.4)
    coords[24] = (1.6, -3.6, 0.5)
    coords[25] = (0.9, -4.9, 0.8)
    coords[26] = (3.1, -3.7, 0.6)
    return [coords[i] for i in range(1, len(LIGAND_ATOMS) + 1)]


def build_sdf() -> str:
    n, m = len(LIGAND_ATOMS), len(LIGAND_BONDS)
    assert n == 26 and m == 28
    tally = {e: LIGAND_ATOMS.count(e) for e in set(LIGAND_ATOMS)}
    assert tally == {"C": 19, "N": 6, "O": 1}, tally
    rings = m - n + 1  # connected graph cycle rank
    assert rings == 3, rings

    lines = ["Roscovitine", "  happier          3D", " purine CDK inhibitor, heavy atoms only"]
    lines.append(f"{n:3d}{m:3d}  0  0  1  0  0  0  0  0999 V2000")
    for (x, y, z), element in zip(_ligand_coords(), LIGAND_ATOMS):
        lines.append(f"{x:10.4f}{y:10.4f}{z:10.4f} {element:<3s} 0  0  0  0  0  0  0  0  0  0  0  0")
    for a, b, order in LIGAND_BONDS:
        lines.append(f"{a:3d}{b:3d}{order:3d}  0  0  0  0")
    lines.append("M  END")
    lines.append("> <FORMULA>")
    lines.append("C19H26N6O")
    lines.append("")
    lines.append("> <CAS>")
    lines.append("186692-46-6")
    lines.append("")
    lines.append("$$$$")
    return "\n".join(lines) + "\n"


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)
    (FIXTURES / "8p34_fragment.pdb").write_text(build_pdb())
    (FIXTURES / "roscovitine.sdf").write_text(build_sdf())
    print("wrote 8p34_fragment.pdb and roscovitine.sdf")


if __name__ == "__main__":
    main()
