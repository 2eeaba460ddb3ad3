"""Parsers for the two expert-supplied input formats: PDB (initial protein)
and SDF/molfile V2000 (reference ligand).

Both parsers are pure functions of their input text. Only atom identity and
coordinates are read from PDB records; occupancy and B-factor are never used
downstream and are ignored. The SDF property block is kept as an opaque
key -> text map for display.
"""

import math
from dataclasses import dataclass, field

from .errors import CountsMismatch, EmptyStructure, MalformedRecord


@dataclass(frozen=True)
class AtomRecord:
    serial: int
    element: str
    x: float
    y: float
    z: float


@dataclass(frozen=True)
class ProteinStructure:
    name: str
    atoms: tuple[AtomRecord, ...]
    chain_count: int


@dataclass(frozen=True)
class LigandAtom:
    element: str
    x: float
    y: float
    z: float


@dataclass(frozen=True)
class LigandBond:
    a: int  # 1-based atom index
    b: int
    order: int


@dataclass(frozen=True)
class LigandStructure:
    name: str
    atoms: tuple[LigandAtom, ...]
    bonds: tuple[LigandBond, ...]
    properties: dict[str, str] = field(default_factory=dict)
    warnings: tuple[str, ...] = ()


def _parse_float(raw: str, line_no: int, what: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise MalformedRecord(line_no, f"{what} field {raw.strip()!r} is not numeric")
    if not math.isfinite(value):
        raise MalformedRecord(line_no, f"{what} field is not finite")
    return value


def parse_pdb(content: str, name: str = "") -> ProteinStructure:
    """Parse ATOM/HETATM records from PDB v3.3 fixed-width text.

    TER records delimit chains and END stops parsing; every other record
    type is ignored. Element symbols come from columns 77-78, falling back
    to the first alphabetic character of the atom name (columns 13-16) when
    that field is blank, as in older files.

    Raises EmptyStructure when no atom records are present and
    MalformedRecord when a serial or coordinate field fails to parse or a
    serial repeats.
    """
    atoms: list[AtomRecord] = []
    chain_ids: list[str] = []
    seen_serials: set[int] = set()
    for line_no, line in enumerate(content.splitlines(), start=1):
        record = line[:6]
        if record.startswith("END") and not record.startswith("ENDMDL"):
            break
        if record.rstrip() == "TER":
            continue
        if record not in ("ATOM  ", "HETATM"):
            continue
        try:
            serial = int(line[6:11])
        except ValueError:
            raise MalformedRecord(line_no, f"serial field {line[6:11].strip()!r} is not numeric")
        if serial in seen_serials:
            raise MalformedRecord(line_no, f"duplicate atom serial {serial}")
        seen_serials.add(serial)
        x = _parse_float(line[30:38], line_no, "x")
        y = _parse_float(line[38:46], line_no, "y")
        z = _parse_float(line[46:54], line_no, "z")
        element = line[76:78].strip()
        if not element:
            element = _element_from_atom_name(line[12:16], line_no)
        chain_id = line[21:22]
        if chain_id not in chain_ids:
            chain_ids.append(chain_id)
        atoms.append(AtomRecord(serial=serial, element=element, x=x, y=y, z=z))
    if not atoms:
        raise EmptyStructure("no ATOM or HETATM records found")
    return ProteinStructure(name=name, atoms=tuple(atoms), chain_count=len(chain_ids))


def _element_from_atom_name(atom_name: str, line_no: int) -> str:
    for ch in atom_name:
        if ch.isalpha():
            return ch.upper()
    raise MalformedRecord(line_no, f"cannot infer element from atom name {atom_name!r}")


def serialize_pdb(structure: ProteinStructure) -> str:
    """Emit a structure back as ATOM records (debug emitter, not byte-exact
    to the original input)."""
    lines = []
    for atom in structure.atoms:
        lines.append(
            "ATOM  %5d %-4s UNK A   1    %8.3f%8.3f%8.3f  1.00  0.00          %2s"
            % (atom.serial, atom.element[:4], atom.x, atom.y, atom.z, atom.element[:2])
        )
    lines.append("END")
    return "\n".join(lines) + "\n"


def parse_sdf(content: str) -> LigandStructure:
    """Parse the first molecule of an SDF file (molfile V2000).

    The atom and bond lists always match the counts-line declaration;
    CountsMismatch is raised when a block ends early or holds extra
    records. Extra molecules after the first ``$$$$`` are skipped with a
    warning attached to the result. ``> <tag>`` data items are collected
    verbatim into ``properties``.
    """
    lines = content.splitlines()
    if len(lines) < 4:
        raise CountsMismatch("molfile shorter than header plus counts line")
    name = lines[0].strip()
    counts_line_no = 4
    counts = lines[3]
    try:
        n_atoms = int(counts[0:3])
        n_bonds = int(counts[3:6])
    except ValueError:
        raise MalformedRecord(counts_line_no, f"counts line {counts!r} is not numeric")
    if n_atoms < 1:
        raise CountsMismatch("counts line declares zero atoms")

    atoms: list[LigandAtom] = []
    bonds: list[LigandBond] = []
    cursor = 4
    for _ in range(n_atoms):
        line_no = cursor + 1
        if cursor >= len(lines) or _is_block_end(lines[cursor]):
            raise CountsMismatch(
                f"counts line declares {n_atoms} atoms but the atom block ends after {len(atoms)}"
            )
        line = lines[cursor]
        x = _parse_float(line[0:10], line_no, "x")
        y = _parse_float(line[10:20], line_no, "y")
        z = _parse_float(line[20:30], line_no, "z")
        element = line[31:34].strip()
        if not element:
            raise MalformedRecord(line_no, "blank element symbol")
        atoms.append(LigandAtom(element=element, x=x, y=y, z=z))
        cursor += 1
    for _ in range(n_bonds):
        line_no = cursor + 1
        if cursor >= len(lines) or _is_block_end(lines[cursor]):
            raise CountsMismatch(
                f"counts line declares {n_bonds} bonds but the bond block ends after {len(bonds)}"
            )
        line = lines[cursor]
        try:
            a = int(line[0:3])
            b = int(line[3:6])
            order = int(line[6:9])
        except ValueError:
            raise MalformedRecord(line_no, f"bond record {line!r} is not numeric")
        if not (1 <= a <= n_atoms) or not (1 <= b <= n_atoms):
            raise MalformedRecord(line_no, f"bond endpoint out of range in {line!r}")
        if order not in (1, 2, 3, 4):
            raise MalformedRecord(line_no, f"bond order {order} outside 1-4")
        bonds.append(LigandBond(a=a, b=b, order=order))
        cursor += 1

    properties: dict[str, str] = {}
    warnings: list[str] = []
    saw_end = False
    while cursor < len(lines):
        line = lines[cursor]
        line_no = cursor + 1
        if line.startswith("$$$$"):
            if any(rest.strip() for rest in lines[cursor + 1 :]):
                warnings.append("multi-molecule SDF: only the first molecule was read")
            break
        if line.startswith("M  END"):
            saw_end = True
            cursor += 1
            continue
        if not saw_end:
            # Between the bond block and M END only property lines may appear;
            # anything else means the counts line under-declared a block.
            if line.startswith(("M  ", "A  ", "V  ", "G  ")) or not line.strip():
                cursor += 1
                continue
            raise CountsMismatch(f"unexpected record before M END at line {line_no}: {line!r}")
        if line.startswith("> "):
            tag = line.split("<", 1)[-1].split(">", 1)[0] if "<" in line else line[2:].strip()
            value_lines = []
            cursor += 1
            while cursor < len(lines) and lines[cursor].strip() and not lines[cursor].startswith("$$$$"):
                value_lines.append(lines[cursor])
                cursor += 1
            properties[tag] = "\n".join(value_lines)
            continue
        cursor += 1
    return LigandStructure(
        name=name,
        atoms=tuple(atoms),
        bonds=tuple(bonds),
        properties=properties,
        warnings=tuple(warnings),
    )


def _is_block_end(line: str) -> bool:
    return line.startswith("M  END") or line.startswith("$$$$")


def serialize_sdf(ligand: LigandStructure) -> str:
    """Emit a ligand back as a V2000 molfile (debug emitter)."""
    lines = [ligand.name, "  debug emit", ""]
    lines.append("%3d%3d  0  0  0  0  0  0  0  0999 V2000" % (len(ligand.atoms), len(ligand.bonds)))
    for atom in ligand.atoms:
        lines.append(
            "%10.4f%10.4f%10.4f %-3s 0  0  0  0  0  0  0  0  0  0  0  0"
            % (atom.x, atom.y, atom.z, atom.element)
        )
    for bond in ligand.bonds:
        lines.append("%3d%3d%3d  0  0  0  0" % (bond.a, bond.b, bond.order))
    lines.append("M  END")
    for tag, value in ligand.properties.items():
        lines.append(f"> <{tag}>")
        lines.append(value)
        lines.append("")
    lines.append("$$$$")
    return "\n".join(lines) + "\n"
