"""Operator entry points: ingest flat files, serve the API, run analyses.

Exit codes are part of the interface: 0 success, 2 usage or input-format
problems, 3 bad or missing data (snapshots, sessions), 4 provider failures.
"""

from __future__ import annotations

import json
import pathlib
import sys

import click
import uvicorn

from .api import create_app
from .criteria import (
    OfflineDockingProvider,
    OfflineImpactProvider,
    RemoteDockingProvider,
    RemoteImpactProvider,
)
from .errors import (
    HappierError,
    InvalidInput,
    NoNeighbors,
    ProviderError,
    SessionNotFound,
    SnapshotError,
    UnknownProtein,
)
from .linkography import (
    DesignMove,
    OfflineEmbeddingProvider,
    build_linkograph,
    embed,
    label_ppis,
    report_dict,
    segment_moves,
)
from .session import SessionStore, render_move_text
from .stringdb import InteractionStore, ingest_links

EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_PROVIDER = 4


def _exit_code(exc: HappierError) -> int:
    if isinstance(exc, ProviderError):
        return EXIT_PROVIDER
    if isinstance(exc, (SnapshotError, SessionNotFound, UnknownProtein, NoNeighbors)):
        return EXIT_DATA
    return EXIT_USAGE  # InvalidInput and friends: the input itself is bad


def _die(exc: HappierError):
    click.echo(f"error: {exc}", err=True)
    sys.exit(_exit_code(exc))


def _load_snapshot(db_dir: str) -> InteractionStore:
    try:
        return InteractionStore.load(db_dir)
    except SnapshotError as exc:
        _die(exc)


def _symbol_of(registry: InteractionStore):
    def resolve(pid: str) -> str:
        protein = registry.protein(pid)
        return protein.symbol if protein else pid

    return resolve


@click.group()
def main():
    """Explore protein interaction neighborhoods and analyze sessions."""


@main.command()
@click.option("--links", "links_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="interaction flat file (protein1 protein2 combined_score)")
@click.option("--info", "info_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="protein annotation flat file")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False),
              help="snapshot directory to write")
@click.option("--seed", type=int, default=None, hidden=True,
              help="accepted for interface parity; ingest output is already deterministic")
def ingest(links_path, info_path, out_dir, seed):
    """Parse flat files into a reloadable snapshot and print counts."""
    try:
        store = ingest_links(
            pathlib.Path(links_path).read_text(),
            pathlib.Path(info_path).read_text(),
        )
        store.save(out_dir)
    except HappierError as exc:
        _die(exc)
    click.echo(f"proteins: {len(store.proteins)}")
    click.echo(f"interactions: {store.interaction_count}")
    click.echo(f"snapshot: {out_dir}")


def _impact_provider(kind: str, corpus: str | None, symbol_of):
    if kind == "offline":
        if not corpus:
            raise click.UsageError("--corpus is required with --impact-provider offline")
        return OfflineImpactProvider.from_corpus_dir(corpus, symbol_of=symbol_of)
    if kind.startswith(("http://", "https://")):
        return RemoteImpactProvider(kind)
    raise click.UsageError(f"--impact-provider must be 'offline' or a URL, got {kind!r}")


def _docking_provider(kind: str, affinities: str | None, symbol_of):
    if kind == "offline":
        if not affinities:
            raise click.UsageError("--affinities is required with --docking-provider offline")
        return OfflineDockingProvider.from_table_file(affinities, symbol_of=symbol_of)
    if kind.startswith(("http://", "https://")):
        return RemoteDockingProvider(kind)
    raise click.UsageError(f"--docking-provider must be 'offline' or a URL, got {kind!r}")


@main.command()
@click.option("--db", "db_dir", required=True, envvar="HAPPIER_DB", type=click.Path(),
              help="snapshot directory (sessions are stored under <db>/sessions)")
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--impact-provider", "impact_kind", default="offline", show_default=True,
              help="'offline' or a provider base URL")
@click.option("--docking-provider", "docking_kind", default="offline", show_default=True,
              help="'offline' or a provider base URL")
@click.option("--corpus", type=click.Path(exists=True, file_okay=False), default=None,
              help="document directory for the offline impact provider")
@click.option("--affinities", type=click.Path(exists=True, dir_okay=False), default=None,
              help="affinity table for the offline docking provider")
@click.option("--provider-concurrency", default=4, show_default=True,
              help="max in-flight provider batches")
@click.option("--seed", type=int, default=None,
              help="fix the session id sequence (testing)")
def serve(db_dir, port, host, impact_kind, docking_kind, corpus, affinities,
          provider_concurrency, seed):
    """Serve the exploration API over a snapshot."""
    registry = _load_snapshot(db_dir)
    symbol_of = _symbol_of(registry)
    try:
        impact = _impact_provider(impact_kind, corpus, symbol_of)
        docking = _docking_provider(docking_kind, affinities, symbol_of)
    except HappierError as exc:
        _die(exc)
    app = create_app(
        registry,
        pathlib.Path(db_dir) / "sessions",
        impact,
        docking,
        seed=seed,
        provider_concurrency=provider_concurrency,
    )
    uvicorn.run(app, host=host, port=port)


def _read_submitted(path: str) -> list[str]:
    targets = []
    for line in pathlib.Path(path).read_text().splitlines():
        targets.extend(part.strip() for part in line.split(",") if part.strip())
    if not targets:
        raise InvalidInput(f"no submitted pairs in {path}")
    return targets


def _read_confidence(path: str) -> dict[str, float]:
    lines = pathlib.Path(path).read_text().splitlines()
    if not lines or lines[0].split("\t")[:2] != ["target", "confidence"]:
        raise InvalidInput(f"{path} must start with a 'target<TAB>confidence' header")
    table = {}
    for line_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) < 2:
            raise InvalidInput(f"{path} line {line_no}: expected two tab-separated fields")
        try:
            table[parts[0]] = float(parts[1])
        except ValueError:
            raise InvalidInput(f"{path} line {line_no}: confidence {parts[1]!r} is not a number")
    return table


@main.command()
@click.option("--transcript", type=click.Path(exists=True, dir_okay=False), default=None,
              help="plain-text transcript; sentences become moves")
@click.option("--session", "session_id", default=None,
              help="analyze a recorded session's event log instead of a transcript")
@click.option("--db", "db_dir", envvar="HAPPIER_DB", type=click.Path(), default=None,
              help="snapshot directory (required with --session)")
@click.option("--threshold", default=0.75, show_default=True,
              help="cosine similarity above which two moves are linked")
@click.option("--k-fraction", default=0.10, show_default=True,
              help="fraction of moves designated divergent/convergent")
@click.option("--submitted", "submitted_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="CSV of submitted target symbols to label")
@click.option("--center", "center_symbol", default=None,
              help="center protein symbol (required with --submitted in transcript mode)")
@click.option("--match-center", is_flag=True,
              help="count bare center-symbol mentions as pair presence")
@click.option("--confidence", "confidence_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="target<TAB>confidence table for per-label summaries")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None,
              help="write the report JSON here instead of stdout")
@click.option("--seed", type=int, default=None, hidden=True,
              help="accepted for interface parity; the analysis is deterministic")
def linkograph(transcript, session_id, db_dir, threshold, k_fraction, submitted_path,
               center_symbol, match_center, confidence_path, out_path, seed):
    """Build a fuzzy linkograph and label submitted center-target pairs."""
    if (transcript is None) == (session_id is None):
        raise click.UsageError("provide exactly one of --transcript or --session")
    try:
        if transcript is not None:
            moves = segment_moves(pathlib.Path(transcript).read_text())
        else:
            if db_dir is None:
                raise click.UsageError("--db (or HAPPIER_DB) is required with --session")
            registry = _load_snapshot(db_dir)
            store = SessionStore(pathlib.Path(db_dir) / "sessions", registry)
            state = store.get(session_id)
            if not state.events:
                raise InvalidInput(f"session {session_id} has no events to analyze")
            symbol_of = _symbol_of(registry)
            # one move per event, text taken verbatim (same rule as the API)
            moves = [
                DesignMove(index=i, text=render_move_text(event, symbol_of))
                for i, event in enumerate(state.events, start=1)
            ]
            if center_symbol is None:
                center_symbol = state.center_symbol
        embedded = embed(OfflineEmbeddingProvider(), moves)
        graph = build_linkograph(embedded, threshold=threshold, k_fraction=k_fraction)
        labels = None
        confidence = None
        if submitted_path is not None:
            if not center_symbol:
                raise click.UsageError("--center is required with --submitted")
            labels = label_ppis(graph, _read_submitted(submitted_path), center_symbol,
                                match_center=match_center)
            if confidence_path is not None:
                confidence = _read_confidence(confidence_path)
        report = report_dict(graph, labels, confidence)
    except HappierError as exc:
        _die(exc)
    text = json.dumps(report, indent=2)
    if out_path is not None:
        pathlib.Path(out_path).write_text(text + "\n")
        click.echo(f"report: {out_path}")
    else:
        click.echo(text)


if __name__ == "__main__":
    main()
