"""Per-session state: inputs, bookmarks, and an append-only event log.

Events are the source of truth; the bookmark set is a pure fold over
Bookmark/Unbookmark events, and session.json is a convenience snapshot
rewritten after each mutation. The log is flushed per write so a crash
loses at most the snapshot, never an acknowledged event.
"""

import json
import pathlib
import random
import secrets
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .chem import LigandStructure, ProteinStructure, parse_pdb, parse_sdf
from .criteria import AnnotatedSubgraph, EdgeAnnotation, LayerStatus, NodeAnnotation
from .errors import InvalidInput, SessionNotFound, UnknownProtein
from .graph import CriteriaLayer, Subgraph, thickness_tier
from .stringdb import Interaction, InteractionStore

EVENT_KINDS = frozenset(
    ["ViewSubgraph", "ToggleLayer", "OpenDetail", "Bookmark", "Unbookmark", "Note"]
)


@dataclass(frozen=True)
class SessionEvent:
    seq: int  # strictly increasing from 1
    kind: str
    payload: dict
    text: str | None
    ts: str  # ISO-8601


@dataclass
class SessionState:
    session_id: str
    created_at: str
    center: str  # protein id
    center_symbol: str
    impact_text: str
    pdb_text: str
    sdf_text: str
    protein: ProteinStructure
    ligand: LigandStructure
    bookmarks: set[str] = field(default_factory=set)
    events: list[SessionEvent] = field(default_factory=list)


def _now_iso() -> str:
    return datetime.now(timezone.utc).isoformat()


def make_id_generator(seed: int | None = None):
    """Session-id factory; seeded form is for tests and --seed runs."""
    if seed is None:
        return lambda: secrets.token_hex(8)
    rng = random.Random(seed)
    return lambda: "".join(rng.choice("0123456789abcdef") for _ in range(16))


def fold_bookmarks(events: list[SessionEvent]) -> set[str]:
    """Bookmark state as a pure fold over the event log."""
    marks: set[str] = set()
    for event in events:
        if event.kind == "Bookmark":
            marks.add(event.payload["target"])
        elif event.kind == "Unbookmark":
            marks.discard(event.payload["target"])
    return marks


def render_move_text(event: SessionEvent, symbol_of=lambda pid: pid) -> str:
    """The design-move text for an event: its free text when present,
    otherwise a canonical rendering that keeps protein symbols matchable."""
    if event.text:
        return event.text
    kind, payload = event.kind, event.payload
    if kind == "ViewSubgraph":
        return f"viewed subgraph {payload.get('index', '?')}"
    if kind == "ToggleLayer":
        state = "on" if payload.get("active", True) else "off"
        return f"toggled layer {payload.get('layer', '?')} {state}"
    if kind == "OpenDetail":
        return f"opened detail for {symbol_of(payload.get('target', '?'))}"
    if kind == "Bookmark":
        return f"bookmarked {symbol_of(payload.get('target', '?'))}"
    if kind == "Unbookmark":
        return f"removed bookmark {symbol_of(payload.get('target', '?'))}"
    return ""


def bookmark_graph(
    state: SessionState,
    subgraphs: list[Subgraph],
    annotated: dict[int, AnnotatedSubgraph] | None = None,
    subgraph_filter: set[int] | None = None,
) -> AnnotatedSubgraph:
    """The personalized view: center plus bookmarked targets, optionally
    restricted to bookmarks living in the given subgraph indices.

    Edges are the center-target interactions only; when per-subgraph
    annotations are supplied, each surviving edge/node carries its latest
    annotation. Returns an AnnotatedSubgraph whose index is 0.
    """
    home: dict[str, int] = {}
    center_score: dict[str, int] = {}
    chosen: list[str] = []
    for sub in subgraphs:
        for edge in sub.edges:
            if state.center in (edge.a, edge.b):
                target = edge.b if edge.a == state.center else edge.a
                center_score[target] = edge.combined_score
        for member in sub.members:
            home[member] = sub.index
            if member in state.bookmarks and (
                subgraph_filter is None or sub.index in subgraph_filter
            ):
                chosen.append(member)

    edges = tuple(Interaction(state.center, m, center_score[m]) for m in chosen)
    view = Subgraph(index=0, center=state.center, members=tuple(chosen), edges=edges)

    edge_ann: dict[tuple[str, str], EdgeAnnotation] = {}
    node_ann: dict[str, NodeAnnotation] = {}
    covered_c2 = covered_c3 = 0
    for member in chosen:
        key = (state.center, member) if state.center < member else (member, state.center)
        source = (annotated or {}).get(home[member])
        src_edge = source.edges.get(key) if source else None
        src_node = source.nodes.get(member) if source else None
        edge_ann[key] = src_edge or EdgeAnnotation(tier=thickness_tier(center_score[member]))
        node_ann[member] = src_node or NodeAnnotation()
        if edge_ann[key].pathway_score is not None:
            covered_c2 += 1
        if node_ann[member].affinity is not None:
            covered_c3 += 1

    def status(covered: int) -> LayerStatus:
        if annotated is None:
            return LayerStatus.pending()
        if covered == len(chosen):
            return LayerStatus.ready()
        return LayerStatus.failed(f"{len(chosen) - covered} of {len(chosen)} unannotated")

    layer_status = {
        CriteriaLayer.C1: LayerStatus.ready(),
        CriteriaLayer.C2: status(covered_c2),
        CriteriaLayer.C3: status(covered_c3),
    }
    return AnnotatedSubgraph(subgraph=view, edges=edge_ann, nodes=node_ann, layer_status=layer_status)


class SessionStore:
    """Directory-per-session persistence with a single writer per session.

    Mutations take the per-session lock, append to events.jsonl (flushed),
    apply the in-memory change, then rewrite the session.json snapshot.
    """

    def __init__(self, root: str | pathlib.Path, registry: InteractionStore, seed: int | None = None):
        self.root = pathlib.Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.registry = registry
        self._new_id = make_id_generator(seed)
        self._live: dict[str, SessionState] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def lock(self, session_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(session_id, threading.Lock())

    def _dir(self, session_id: str) -> pathlib.Path:
        return self.root / session_id

    # -- lifecycle --------------------------------------------------------

    def create(self, center_symbol: str, pdb: str, impact_text: str, sdf: str) -> SessionState:
        if not impact_text.strip():
            raise InvalidInput("impact_text is empty")
        protein = parse_pdb(pdb, name=center_symbol)
        ligand = parse_sdf(sdf)
        center = self.registry.resolve(center_symbol)  # raises UnknownProtein
        session_id = self._new_id()
        while self._dir(session_id).exists():
            session_id = self._new_id()
        state = SessionState(
            session_id=session_id,
            created_at=_now_iso(),
            center=center.id,
            center_symbol=center.symbol,
            impact_text=impact_text,
            pdb_text=pdb,
            sdf_text=sdf,
            protein=protein,
            ligand=ligand,
        )
        directory = self._dir(session_id)
        directory.mkdir(parents=True)
        (directory / "events.jsonl").touch()
        self._write_snapshot(state)
        self._live[session_id] = state
        return state

    def get(self, session_id: str) -> SessionState:
        state = self._live.get(session_id)
        if state is not None:
            return state
        state = self._load(session_id)
        self._live[session_id] = state
        return state

    def _load(self, session_id: str) -> SessionState:
        directory = self._dir(session_id)
        snapshot_path = directory / "session.json"
        if not snapshot_path.exists():
            raise SessionNotFound(session_id)
        snap = json.loads(snapshot_path.read_text())
        events = []
        events_path = directory / "events.jsonl"
        if events_path.exists():
            for line in events_path.read_text().splitlines():
                if not line.strip():
                    continue
                raw = json.loads(line)
                events.append(
                    SessionEvent(
                        seq=raw["seq"], kind=raw["kind"], payload=raw.get("payload", {}),
                        text=raw.get("text"), ts=raw["ts"],
                    )
                )
        state = SessionState(
            session_id=snap["session_id"],
            created_at=snap["created_at"],
            center=snap["center"],
            center_symbol=snap["center_symbol"],
            impact_text=snap["impact_text"],
            pdb_text=snap["pdb"],
            sdf_text=snap["sdf"],
            protein=parse_pdb(snap["pdb"], name=snap["center_symbol"]),
            ligand=parse_sdf(snap["sdf"]),
            bookmarks=fold_bookmarks(events),  # events are authoritative
            events=events,
        )
        return state

    def _write_snapshot(self, state: SessionState) -> None:
        snapshot = {
            "v": 1,
            "session_id": state.session_id,
            "created_at": state.created_at,
            "center": state.center,
            "center_symbol": state.center_symbol,
            "impact_text": state.impact_text,
            "pdb": state.pdb_text,
            "sdf": state.sdf_text,
            "bookmarks": sorted(state.bookmarks),
        }
        (self._dir(state.session_id) / "session.json").write_text(
            json.dumps(snapshot, indent=1) + "\n"
        )

    # -- mutations --------------------------------------------------------

    def _validate_event(self, kind: str, payload: dict, text: str | None) -> None:
        if kind not in EVENT_KINDS:
            raise InvalidInput(f"unknown event kind {kind!r}")
        if kind in ("Bookmark", "Unbookmark", "OpenDetail"):
            target = payload.get("target")
            if not target or target not in self.registry.proteins:
                raise UnknownProtein(str(target))
        if kind == "Note" and not (text and text.strip()):
            raise InvalidInput("Note events need text")

    def _append_locked(
        self, state: SessionState, kind: str, payload: dict, text: str | None
    ) -> SessionEvent:
        event = SessionEvent(
            seq=len(state.events) + 1, kind=kind, payload=payload, text=text, ts=_now_iso()
        )
        self._append_line(state, event)
        state.events.append(event)
        if kind == "Bookmark":
            state.bookmarks.add(payload["target"])
        elif kind == "Unbookmark":
            state.bookmarks.discard(payload["target"])
        self._write_snapshot(state)
        return event

    def append_event(
        self, session_id: str, kind: str, payload: dict | None = None, text: str | None = None
    ) -> SessionEvent:
        payload = dict(payload or {})
        self._validate_event(kind, payload, text)
        state = self.get(session_id)
        with self.lock(session_id):
            return self._append_locked(state, kind, payload, text)

    def _append_line(self, state: SessionState, event: SessionEvent) -> None:
        line = json.dumps(
            {"v": 1, "seq": event.seq, "kind": event.kind, "payload": event.payload,
             "text": event.text, "ts": event.ts}
        )
        with open(self._dir(state.session_id) / "events.jsonl", "a") as fh:
            fh.write(line + "\n")
            fh.flush()

    def toggle_bookmark(self, session_id: str, target: str) -> bool:
        """Flip membership; the kind decision and the event append happen
        under one lock so interleaved writers serialize cleanly. Returns the
        new membership state."""
        state = self.get(session_id)
        with self.lock(session_id):
            kind = "Unbookmark" if target in state.bookmarks else "Bookmark"
            self._validate_event(kind, {"target": target}, None)
            self._append_locked(state, kind, {"target": target}, None)
            return target in state.bookmarks

    def set_bookmark(self, session_id: str, target: str, present: bool) -> bool:
        """Idempotent form: an event is appended only when state changes."""
        if target not in self.registry.proteins:
            raise UnknownProtein(target)
        state = self.get(session_id)
        with self.lock(session_id):
            if (target in state.bookmarks) == present:
                return False
            kind = "Bookmark" if present else "Unbookmark"
            self._validate_event(kind, {"target": target}, None)
            self._append_locked(state, kind, {"target": target}, None)
            return True
