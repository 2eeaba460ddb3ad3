"""HTTP facade over the exploration engine.

One FastAPI app per snapshot + provider configuration. All handlers are
synchronous: they run in the framework's threadpool, which lets the
per-session locks in SessionStore serialize mutations the same way they
do for library callers.
"""

from __future__ import annotations

import logging
import threading
from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import __version__
from .criteria import (
    AnnotatedSubgraph,
    DockingProvider,
    ImpactProvider,
    ProviderFailure,
    annotate,
    assess_impact,
    dock,
)
from .errors import (
    HappierError,
    InvalidInput,
    NoNeighbors,
    ProviderError,
    ProviderUnavailable,
    SessionNotFound,
    SnapshotError,
    UnknownProtein,
)
from .graph import Subgraph, partition
from .linkography import (
    DesignMove,
    EmbeddingProvider,
    OfflineEmbeddingProvider,
    build_linkograph,
    embed,
    label_ppis,
    report_dict,
)
from .session import SessionState, SessionStore, bookmark_graph, render_move_text
from .stringdb import InteractionStore

log = logging.getLogger(__name__)

MAX_BODY_BYTES = 5 * 2**20
LAYER_NAMES = ("c1", "c2", "c3")


def error_body(code: str, message: str, detail: Any = None) -> dict:
    body: dict[str, Any] = {"code": code, "message": message}
    if detail is not None:
        body["detail"] = detail
    return body


def classify_error(exc: HappierError) -> tuple[str, int]:
    """Stable error-code/status mapping for every domain exception."""
    if isinstance(exc, (UnknownProtein, SessionNotFound, NoNeighbors)):
        return "NotFound", 404
    if isinstance(exc, ProviderError):
        return "ProviderUnavailable", 502
    if isinstance(exc, (InvalidInput, SnapshotError)):
        return "InvalidInput", 400
    return "Internal", 500


class SessionCreateBody(BaseModel):
    center_symbol: str
    pdb: str
    impact_text: str
    sdf: str


class EventBody(BaseModel):
    kind: str
    payload: dict[str, Any] = {}
    text: str | None = None


class LinkographBody(BaseModel):
    moves: list[str] | None = None
    session_id: str | None = None
    threshold: float = 0.75
    k_fraction: float = 0.10
    submitted: list[str] | None = None
    center_symbol: str | None = None
    match_center: bool = False


class Service:
    """Shared state behind the handlers: registry, sessions, providers,
    and the lazy per-session layer cache."""

    def __init__(
        self,
        registry: InteractionStore,
        sessions_dir,
        impact_provider: ImpactProvider,
        docking_provider: DockingProvider,
        embedding_provider: EmbeddingProvider | None,
        seed: int | None,
        provider_concurrency: int,
    ):
        self.registry = registry
        self.store = SessionStore(sessions_dir, registry, seed=seed)
        self.impact_provider = impact_provider
        self.docking_provider = docking_provider
        self.embedder = embedding_provider or OfflineEmbeddingProvider()
        # bounds concurrent provider calls across all sessions
        self.provider_sem = threading.Semaphore(provider_concurrency)
        self._subgraphs: dict[str, list[Subgraph]] = {}
        # (session_id, subgraph index) -> {"c2": results|ProviderFailure, "c3": ...}
        self._layers: dict[tuple[str, int], dict[str, Any]] = {}

    def symbol_of(self, pid: str) -> str:
        protein = self.registry.protein(pid)
        return protein.symbol if protein else pid

    def subgraphs_for(self, state: SessionState) -> list[Subgraph]:
        cached = self._subgraphs.get(state.session_id)
        if cached is None:
            cached = partition(self.registry, state.center)
            self._subgraphs[state.session_id] = cached
        return cached

    def _compute_impact(self, state: SessionState, subgraph: Subgraph):
        try:
            with self.provider_sem:
                return assess_impact(
                    self.impact_provider, state.center, state.impact_text, list(subgraph.members)
                )
        except HappierError as exc:
            log.warning("impact layer failed for subgraph %d: %s", subgraph.index, exc)
            return ProviderFailure(str(exc))

    def _compute_docking(self, state: SessionState, subgraph: Subgraph):
        try:
            with self.provider_sem:
                return dock(self.docking_provider, state.ligand, list(subgraph.members))
        except HappierError as exc:
            log.warning("docking layer failed for subgraph %d: %s", subgraph.index, exc)
            return ProviderFailure(str(exc))

    def layer_results(self, state: SessionState, subgraph: Subgraph, layers: set[str], refresh: bool):
        """Fetch-or-compute the requested provider layers for one subgraph.

        Results (including failures) are cached per session; refresh discards
        the cached entries for the requested layers before recomputing. Layers
        not requested now stay out of the response even if cached.
        """
        key = (state.session_id, subgraph.index)
        with self.store.lock(state.session_id):
            cache = self._layers.setdefault(key, {})
            if refresh:
                for name in layers:
                    cache.pop(name, None)
            if "c2" in layers and "c2" not in cache:
                cache["c2"] = self._compute_impact(state, subgraph)
            if "c3" in layers and "c3" not in cache:
                cache["c3"] = self._compute_docking(state, subgraph)
            impact = cache.get("c2") if "c2" in layers else None
            docking = cache.get("c3") if "c3" in layers else None
        return impact, docking

    def annotated_from_cache(self, state: SessionState) -> dict[int, AnnotatedSubgraph]:
        """Annotations for whatever layers already exist, without triggering
        any provider call (used by the bookmark view)."""
        out = {}
        for sub in self.subgraphs_for(state):
            cache = self._layers.get((state.session_id, sub.index))
            if cache:
                out[sub.index] = annotate(sub, cache.get("c2"), cache.get("c3"))
        return out


def _layer_status_json(annotated: AnnotatedSubgraph) -> dict:
    out = {}
    for layer, status in annotated.layer_status.items():
        entry: dict[str, Any] = {"state": status.state}
        if status.reason:
            entry["reason"] = status.reason
        out[layer.value.lower()] = entry
    return out


def _assessment_json(a) -> dict:
    return {
        "target": a.target,
        "center": a.center,
        "score": a.score,
        "explanation": a.explanation,
        "references": [
            {"title": r.title, "identifier": r.identifier, "excerpt": r.excerpt}
            for r in a.references
        ],
    }


def _docking_json(r) -> dict:
    return {
        "protein": r.protein,
        "affinity": r.affinity,
        "poses": [
            {
                "pose_id": p.pose_id,
                "confidence": p.confidence,
                "coordinates": [list(c) for c in p.coordinates],
            }
            for p in r.poses
        ],
    }


def _subgraph_json(svc: Service, annotated: AnnotatedSubgraph, subgraph_count: int) -> dict:
    sub = annotated.subgraph
    nodes = []
    for pid in sub.members:
        node: dict[str, Any] = {"id": pid, "symbol": svc.symbol_of(pid)}
        ann = annotated.nodes.get(pid)
        if ann is not None and ann.affinity is not None:
            node["affinity"] = ann.affinity
            node["node_color"] = ann.color.value
        nodes.append(node)
    edges = []
    for edge in sub.edges:
        key = (edge.a, edge.b) if edge.a < edge.b else (edge.b, edge.a)
        ann = annotated.edges[key]
        row: dict[str, Any] = {
            "a": edge.a,
            "b": edge.b,
            "combined_score": edge.combined_score,
            "thickness_tier": ann.tier.value,
        }
        if ann.pathway_score is not None:
            row["pathway_score"] = ann.pathway_score
            row["edge_color"] = ann.color.value
        edges.append(row)
    return {
        "index": sub.index,
        "center": {"id": sub.center, "symbol": svc.symbol_of(sub.center)},
        "nodes": nodes,
        "edges": edges,
        "layer_status": _layer_status_json(annotated),
        "subgraph_count": subgraph_count,
    }


def _parse_layers(raw: str) -> set[str]:
    names = {part.strip().lower() for part in raw.split(",") if part.strip()}
    bad = names - set(LAYER_NAMES)
    if bad:
        raise InvalidInput(f"unknown layers: {', '.join(sorted(bad))}")
    if not names:
        raise InvalidInput("layers parameter is empty")
    return names


def _parse_subgraph_filter(raw: str | None) -> set[int] | None:
    if raw is None or not raw.strip():
        return None
    try:
        return {int(part) for part in raw.split(",") if part.strip()}
    except ValueError:
        raise InvalidInput(f"subgraphs filter {raw!r} is not a comma-separated list of integers")


def create_app(
    registry: InteractionStore,
    sessions_dir,
    impact_provider: ImpactProvider,
    docking_provider: DockingProvider,
    embedding_provider: EmbeddingProvider | None = None,
    seed: int | None = None,
    provider_concurrency: int = 4,
) -> FastAPI:
    svc = Service(
        registry,
        sessions_dir,
        impact_provider,
        docking_provider,
        embedding_provider,
        seed,
        provider_concurrency,
    )
    app = FastAPI(
        title="happier",
        version=__version__,
        openapi_url="/spec",
        docs_url=None,
        redoc_url=None,
    )
    app.state.service = svc

    @app.middleware("http")
    async def body_cap(request: Request, call_next):
        length = request.headers.get("content-length")
        if length is not None and length.isdigit() and int(length) > MAX_BODY_BYTES:
            return JSONResponse(
                status_code=400,
                content=error_body("InvalidInput", "request body exceeds the 5 MB limit"),
            )
        return await call_next(request)

    @app.exception_handler(HappierError)
    async def domain_error(request: Request, exc: HappierError):
        code, status = classify_error(exc)
        return JSONResponse(status_code=status, content=error_body(code, str(exc)))

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, exc: RequestValidationError):
        detail = [
            {"loc": [str(part) for part in err.get("loc", ())], "msg": str(err.get("msg", ""))}
            for err in exc.errors()
        ]
        return JSONResponse(
            status_code=400,
            content=error_body("InvalidInput", "request validation failed", detail),
        )

    @app.exception_handler(StarletteHTTPException)
    async def http_error(request: Request, exc: StarletteHTTPException):
        # normalize framework statuses onto the stable error-code set
        if exc.status_code == 404:
            code, status = "NotFound", 404
        elif exc.status_code in (400, 405, 413, 415, 422):
            code, status = "InvalidInput", 400
        elif exc.status_code == 409:
            code, status = "Conflict", 409
        else:
            code, status = "Internal", 500
        return JSONResponse(status_code=status, content=error_body(code, str(exc.detail)))

    @app.exception_handler(Exception)
    async def unexpected_error(request: Request, exc: Exception):
        log.exception("unhandled error for %s %s", request.method, request.url.path)
        return JSONResponse(status_code=500, content=error_body("Internal", "internal error"))

    @app.post("/sessions", status_code=201)
    def create_session(body: SessionCreateBody):
        state = svc.store.create(body.center_symbol, body.pdb, body.impact_text, body.sdf)
        subgraphs = svc.subgraphs_for(state)
        return {
            "session_id": state.session_id,
            "center": state.center,
            "center_symbol": state.center_symbol,
            "subgraph_count": len(subgraphs),
        }

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        state = svc.store.get(session_id)
        return {
            "session_id": state.session_id,
            "created_at": state.created_at,
            "center": state.center,
            "center_symbol": state.center_symbol,
            "impact_text": state.impact_text,
            "subgraph_count": len(svc.subgraphs_for(state)),
            "bookmarks": sorted(state.bookmarks),
            "event_count": len(state.events),
        }

    @app.get("/sessions/{session_id}/subgraphs/{n}")
    def get_subgraph(session_id: str, n: int, layers: str = "c1", refresh: bool = False):
        state = svc.store.get(session_id)
        subgraphs = svc.subgraphs_for(state)
        if not 1 <= n <= len(subgraphs):
            raise StarletteHTTPException(
                404, f"subgraph {n} not found (session has {len(subgraphs)})"
            )
        requested = _parse_layers(layers)
        subgraph = subgraphs[n - 1]
        impact, docking = svc.layer_results(state, subgraph, requested, refresh)
        annotated = annotate(subgraph, impact, docking)
        return _subgraph_json(svc, annotated, len(subgraphs))

    @app.get("/sessions/{session_id}/ppi/{target}")
    def ppi_detail(session_id: str, target: str):
        state = svc.store.get(session_id)
        pid = svc.registry.resolve(target).id
        subgraphs = svc.subgraphs_for(state)
        subgraph = next((s for s in subgraphs if pid in s.members), None)
        if subgraph is None:
            raise UnknownProtein(f"{target} is not in any subgraph of this session")
        impact, docking = svc.layer_results(state, subgraph, {"c2", "c3"}, refresh=False)
        if isinstance(impact, ProviderFailure):
            raise ProviderUnavailable(impact.reason)
        assessment = next(a for a in impact if a.target == pid)
        body: dict[str, Any] = {
            "target": {"id": pid, "symbol": svc.symbol_of(pid)},
            "subgraph": subgraph.index,
            "assessment": _assessment_json(assessment),
            "bookmarked": pid in state.bookmarks,
        }
        result = None
        if isinstance(docking, list):
            result = next((r for r in docking if r.protein == pid), None)
        if result is not None:
            body["docking"] = _docking_json(result)
        else:
            body["docking_status"] = "failed"
        return body

    @app.put("/sessions/{session_id}/bookmarks/{target}")
    def put_bookmark(session_id: str, target: str):
        pid = svc.registry.resolve(target).id
        changed = svc.store.set_bookmark(session_id, pid, True)
        return {"target": pid, "bookmarked": True, "changed": changed}

    @app.delete("/sessions/{session_id}/bookmarks/{target}")
    def delete_bookmark(session_id: str, target: str):
        pid = svc.registry.resolve(target).id
        changed = svc.store.set_bookmark(session_id, pid, False)
        return {"target": pid, "bookmarked": False, "changed": changed}

    @app.get("/sessions/{session_id}/bookmarks")
    def get_bookmarks(session_id: str, subgraphs: str | None = None):
        state = svc.store.get(session_id)
        chosen = _parse_subgraph_filter(subgraphs)
        parts = svc.subgraphs_for(state)
        view = bookmark_graph(state, parts, svc.annotated_from_cache(state), chosen)
        payload = _subgraph_json(svc, view, len(parts))
        payload["bookmarks"] = sorted(state.bookmarks)
        return payload

    @app.post("/sessions/{session_id}/events", status_code=201)
    def post_event(session_id: str, body: EventBody):
        event = svc.store.append_event(session_id, body.kind, body.payload, body.text)
        return {"seq": event.seq, "ts": event.ts}

    @app.post("/analysis/linkograph")
    def analysis_linkograph(body: LinkographBody):
        if (body.moves is None) == (body.session_id is None):
            raise InvalidInput("provide exactly one of moves or session_id")
        center_symbol = body.center_symbol
        if body.session_id is not None:
            state = svc.store.get(body.session_id)
            texts = [render_move_text(e, svc.symbol_of) for e in state.events]
            if center_symbol is None:
                center_symbol = state.center_symbol
        else:
            texts = list(body.moves)
        if not texts:
            raise InvalidInput("no moves to analyze")
        moves = [DesignMove(index=i + 1, text=t) for i, t in enumerate(texts)]
        embedded = embed(svc.embedder, moves)
        linkograph = build_linkograph(embedded, body.threshold, body.k_fraction)
        labels = None
        if body.submitted:
            if not center_symbol:
                raise InvalidInput("center_symbol is required when submitted pairs are given")
            labels = label_ppis(linkograph, body.submitted, center_symbol, body.match_center)
        return report_dict(linkograph, labels)

    return app
