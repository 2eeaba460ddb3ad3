"""Provider contracts for therapeutic-impact scoring and ligand docking,
deterministic offline implementations of both, and the merge of provider
results onto a subgraph.

The offline providers are stand-ins, not models: impact scoring is a
corpus co-mention count normalized to 0-100, docking reads a fixed affinity
table and fabricates poses by rigid translation. They exist so the whole
engine runs and stays testable with no network and no weights.
"""

import logging
import pathlib
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable

import httpx

from .chem import LigandStructure
from .errors import (
    AffinityOutOfRange,
    InvalidInput,
    ProviderError,
    ProviderUnavailable,
)
from .graph import (
    CriteriaLayer,
    EdgeColor,
    NodeColor,
    Subgraph,
    ThicknessTier,
    edge_color,
    node_color,
    thickness_tier,
)
from .text import content_tokens, split_sentences, tokenize

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Reference:
    title: str
    identifier: str
    excerpt: str


@dataclass(frozen=True)
class ImpactAssessment:
    target: str  # pathway runs target -> center
    center: str
    score: float  # 0..100
    explanation: str
    references: tuple[Reference, ...]


@dataclass(frozen=True)
class Pose:
    pose_id: int
    confidence: float
    coordinates: tuple[tuple[float, float, float], ...]


@dataclass(frozen=True)
class DockingResult:
    protein: str
    affinity: float  # -15..0
    poses: tuple[Pose, ...]


@dataclass(frozen=True)
class LayerStatus:
    state: str  # Ready | Pending | Failed
    reason: str | None = None

    @classmethod
    def ready(cls):
        return cls("Ready")

    @classmethod
    def pending(cls):
        return cls("Pending")

    @classmethod
    def failed(cls, reason: str):
        return cls("Failed", reason)


@dataclass(frozen=True)
class ProviderFailure:
    """Sentinel passed to annotate() when a provider call raised."""

    reason: str


@dataclass(frozen=True)
class EdgeAnnotation:
    tier: ThicknessTier
    pathway_score: float | None = None
    color: EdgeColor | None = None
    impact: ImpactAssessment | None = None


@dataclass(frozen=True)
class NodeAnnotation:
    affinity: float | None = None
    color: NodeColor | None = None
    docking: DockingResult | None = None


@dataclass(frozen=True)
class AnnotatedSubgraph:
    subgraph: Subgraph
    edges: dict[tuple[str, str], EdgeAnnotation] = field(default_factory=dict)
    nodes: dict[str, NodeAnnotation] = field(default_factory=dict)
    layer_status: dict[CriteriaLayer, LayerStatus] = field(default_factory=dict)


class ImpactProvider(ABC):
    @abstractmethod
    def assess(self, center: str, impact_text: str, candidates: list[str]) -> list[ImpactAssessment]:
        """One assessment per candidate, scores on the 0-100 scale."""


class DockingProvider(ABC):
    @abstractmethod
    def dock(self, ligand: LigandStructure, proteins: list[str]) -> list[DockingResult]:
        """Results for the proteins the provider can score; order preserved."""


# -- offline providers -----------------------------------------------------


@dataclass(frozen=True)
class _Document:
    title: str
    identifier: str
    sentences: tuple[str, ...]


class OfflineImpactProvider(ImpactProvider):
    """Corpus co-mention scorer.

    A sentence supports (candidate, impact_text) when it contains the
    candidate symbol as a whole token and at least one content token of the
    impact text, case-insensitively. Scores are match counts normalized so
    the best-supported candidate in the batch gets 100.
    """

    def __init__(self, documents: list[_Document], symbol_of: Callable[[str], str] = lambda pid: pid):
        self._documents = documents
        self._symbol_of = symbol_of

    @classmethod
    def from_corpus_dir(cls, corpus_dir: str | pathlib.Path, symbol_of=lambda pid: pid):
        """Load a directory of plain-text documents, first line = title."""
        documents = []
        for path in sorted(pathlib.Path(corpus_dir).glob("*.txt")):
            lines = path.read_text().splitlines()
            if not lines:
                continue
            title = lines[0].strip()
            body = "\n".join(lines[1:])
            documents.append(
                _Document(title=title, identifier=path.name, sentences=tuple(split_sentences(body)))
            )
        return cls(documents, symbol_of)

    @classmethod
    def from_documents(cls, docs: list[tuple[str, str, str]], symbol_of=lambda pid: pid):
        """docs: (title, identifier, body) triples, for tests."""
        return cls(
            [_Document(t, i, tuple(split_sentences(b))) for t, i, b in docs],
            symbol_of,
        )

    def assess(self, center, impact_text, candidates):
        impact_tokens = content_tokens(impact_text)
        matches: dict[str, list[Reference]] = {}
        for pid in candidates:
            symbol = self._symbol_of(pid).lower()
            refs = []
            for doc in self._documents:
                for sentence in doc.sentences:
                    tokens = set(tokenize(sentence))
                    if symbol in tokens and tokens & impact_tokens:
                        refs.append(Reference(doc.title, doc.identifier, sentence))
            matches[pid] = refs
        best = max((len(r) for r in matches.values()), default=0)
        out = []
        for pid in candidates:
            refs = matches[pid]
            score = 100.0 * len(refs) / best if best else 0.0
            symbol = self._symbol_of(pid)
            explanation = (
                f"{symbol} co-mentioned with the stated impact in {len(refs)} corpus sentence(s)"
                if refs
                else ""
            )
            out.append(
                ImpactAssessment(
                    target=pid,
                    center=center,
                    score=score,
                    explanation=explanation,
                    references=tuple(refs),
                )
            )
        return out


# pose stubs translate the ligand rigidly along these unit directions,
# scaled by pose index; enough to render distinct docking cases
_POSE_DIRECTIONS = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0), (1.0, 1.0, 0.0))


class OfflineDockingProvider(DockingProvider):
    """Affinity-table lookup with fabricated multi-pose output.

    The table is two tab-separated columns under a ``protein\taffinity``
    header. Proteins absent from the table are omitted from the result;
    the annotation step downstream turns that gap into a Failed layer.
    """

    def __init__(self, table: dict[str, float], n_poses: int = 3, symbol_of: Callable[[str], str] = lambda pid: pid):
        self._table = table
        self._n_poses = n_poses
        self._symbol_of = symbol_of

    @classmethod
    def from_table_file(cls, path: str | pathlib.Path, n_poses: int = 3, symbol_of=lambda pid: pid):
        lines = pathlib.Path(path).read_text().splitlines()
        if not lines or lines[0].split("\t")[:2] != ["protein", "affinity"]:
            raise InvalidInput(f"affinity table {path} missing 'protein\\taffinity' header")
        table = {}
        for line_no, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) < 2:
                raise InvalidInput(f"affinity table line {line_no}: expected 2 columns")
            try:
                table[parts[0]] = float(parts[1])
            except ValueError:
                raise InvalidInput(f"affinity table line {line_no}: non-numeric affinity")
        return cls(table, n_poses, symbol_of)

    def dock(self, ligand, proteins):
        out = []
        for pid in proteins:
            affinity = self._table.get(self._symbol_of(pid))
            if affinity is None:
                continue
            poses = []
            for pose_id in range(self._n_poses):
                direction = _POSE_DIRECTIONS[pose_id % len(_POSE_DIRECTIONS)]
                scale = 2.5 * pose_id
                coords = tuple(
                    (a.x + direction[0] * scale, a.y + direction[1] * scale, a.z + direction[2] * scale)
                    for a in ligand.atoms
                )
                poses.append(Pose(pose_id=pose_id, confidence=1.0 / (pose_id + 1), coordinates=coords))
            out.append(DockingResult(protein=pid, affinity=affinity, poses=tuple(poses)))
        return out


# -- remote providers --------------------------------------------------------


class RemoteImpactProvider(ImpactProvider):
    def __init__(self, url: str, timeout: float = 30.0, client: httpx.Client | None = None):
        self._url = url
        self._timeout = timeout
        self._client = client or httpx.Client(timeout=timeout)

    def assess(self, center, impact_text, candidates):
        try:
            response = self._client.post(
                self._url,
                json={"center": center, "impact_text": impact_text, "candidates": candidates},
            )
            response.raise_for_status()
        except httpx.HTTPError as exc:
            raise ProviderUnavailable(f"impact provider: {exc}") from exc
        out = []
        for item in response.json().get("assessments", []):
            out.append(
                ImpactAssessment(
                    target=item["target"],
                    center=item.get("center", center),
                    score=float(item["score"]),
                    explanation=item.get("explanation", ""),
                    references=tuple(
                        Reference(r.get("title", ""), r.get("identifier", ""), r.get("excerpt", ""))
                        for r in item.get("references", [])
                    ),
                )
            )
        return out


class RemoteDockingProvider(DockingProvider):
    def __init__(self, url: str, timeout: float = 30.0, client: httpx.Client | None = None):
        self._url = url
        self._timeout = timeout
        self._client = client or httpx.Client(timeout=timeout)

    def dock(self, ligand, proteins):
        from .chem import serialize_sdf

        try:
            response = self._client.post(
                self._url,
                json={"ligand_sdf": serialize_sdf(ligand), "proteins": proteins},
            )
            response.raise_for_status()
        except httpx.HTTPError as exc:
            raise ProviderUnavailable(f"docking provider: {exc}") from exc
        out = []
        for item in response.json().get("results", []):
            out.append(
                DockingResult(
                    protein=item["protein"],
                    affinity=float(item["affinity"]),
                    poses=tuple(
                        Pose(
                            pose_id=int(p["pose_id"]),
                            confidence=float(p["confidence"]),
                            coordinates=tuple((c[0], c[1], c[2]) for c in p.get("coordinates", [])),
                        )
                        for p in item.get("poses", [])
                    ),
                )
            )
        return out


# -- batch entry points with contract validation ----------------------------


def assess_impact(
    provider: ImpactProvider, center: str, impact_text: str, candidates: list[str]
) -> list[ImpactAssessment]:
    """One validated assessment per candidate, in candidate order."""
    if not impact_text.strip():
        raise InvalidInput("impact_text is empty")
    if not candidates:
        raise InvalidInput("candidates list is empty")
    results = provider.assess(center, impact_text, candidates)
    by_target = {a.target: a for a in results}
    missing = [c for c in candidates if c not in by_target]
    if missing:
        raise ProviderError(f"impact provider returned no assessment for {len(missing)} candidate(s)")
    for a in results:
        if not 0 <= a.score <= 100:
            raise ProviderError(f"impact score {a.score} for {a.target} outside [0,100]")
        if a.score > 0 and not a.explanation:
            raise ProviderError(f"assessment for {a.target} scored {a.score} without explanation")
    return [by_target[c] for c in candidates]


def dock(provider: DockingProvider, ligand: LigandStructure, proteins: list[str]) -> list[DockingResult]:
    """Validated docking results; may be a subset when the provider lacks
    data for some proteins (the gap surfaces as a Failed layer downstream)."""
    if not proteins:
        raise InvalidInput("proteins list is empty")
    results = provider.dock(ligand, proteins)
    known = set(proteins)
    for r in results:
        if r.protein not in known:
            log.warning("docking result for unrequested protein %s ignored", r.protein)
            continue
        if not -15 <= r.affinity <= 0:
            raise AffinityOutOfRange(f"provider affinity {r.affinity} for {r.protein} outside [-15,0]")
        confidences = [p.confidence for p in r.poses]
        if confidences != sorted(confidences, reverse=True):
            raise ProviderError(f"poses for {r.protein} not sorted by confidence")
        for p in r.poses:
            if len(p.coordinates) != len(ligand.atoms):
                raise ProviderError(
                    f"pose {p.pose_id} for {r.protein} has {len(p.coordinates)} coordinates, "
                    f"ligand has {len(ligand.atoms)} atoms"
                )
    return [r for r in results if r.protein in known]


ImpactInput = list[ImpactAssessment] | ProviderFailure | None
DockingInput = list[DockingResult] | ProviderFailure | None


def annotate(
    subgraph: Subgraph,
    impact_results: ImpactInput = None,
    docking_results: DockingInput = None,
) -> AnnotatedSubgraph:
    """Merge provider outputs onto a subgraph.

    C1 is always computable locally, so every edge gets a thickness tier.
    For C2/C3: None means the layer was never requested (Pending), a
    ProviderFailure carries the reason through, and a partial result list
    yields Failed with the gap count while still annotating what arrived.
    Pure function of its inputs; extra results are ignored with a warning.
    """
    center = subgraph.center
    member_set = set(subgraph.members)

    edges: dict[tuple[str, str], EdgeAnnotation] = {}
    impact_by_target: dict[str, ImpactAssessment] = {}
    if isinstance(impact_results, list):
        for a in impact_results:
            if a.target not in member_set:
                log.warning("impact assessment for %s ignored: not in subgraph %d", a.target, subgraph.index)
                continue
            impact_by_target[a.target] = a
    for edge in subgraph.edges:
        key = (edge.a, edge.b) if edge.a < edge.b else (edge.b, edge.a)
        tier = thickness_tier(edge.combined_score)
        target = None
        if edge.a == center and edge.b in member_set:
            target = edge.b
        elif edge.b == center and edge.a in member_set:
            target = edge.a
        assessment = impact_by_target.get(target) if target else None
        if assessment is not None:
            edges[key] = EdgeAnnotation(
                tier=tier,
                pathway_score=assessment.score,
                color=edge_color(assessment.score),
                impact=assessment,
            )
        else:
            edges[key] = EdgeAnnotation(tier=tier)

    nodes: dict[str, NodeAnnotation] = {}
    docking_by_protein: dict[str, DockingResult] = {}
    if isinstance(docking_results, list):
        for r in docking_results:
            if r.protein not in member_set:
                log.warning("docking result for %s ignored: not in subgraph %d", r.protein, subgraph.index)
                continue
            docking_by_protein[r.protein] = r
    for pid in subgraph.members:
        result = docking_by_protein.get(pid)
        if result is not None:
            nodes[pid] = NodeAnnotation(affinity=result.affinity, color=node_color(result.affinity), docking=result)
        else:
            nodes[pid] = NodeAnnotation()

    def layer_state(results, covered: int, total: int, missing_word: str) -> LayerStatus:
        if results is None:
            return LayerStatus.pending()
        if isinstance(results, ProviderFailure):
            return LayerStatus.failed(results.reason)
        if covered == total:
            return LayerStatus.ready()
        return LayerStatus.failed(f"{total - covered} {missing_word} missing")

    layer_status = {
        CriteriaLayer.C1: LayerStatus.ready(),
        CriteriaLayer.C2: layer_state(impact_results, len(impact_by_target), len(member_set), "pathways"),
        CriteriaLayer.C3: layer_state(docking_results, len(docking_by_protein), len(member_set), "nodes"),
    }
    return AnnotatedSubgraph(subgraph=subgraph, edges=edges, nodes=nodes, layer_status=layer_status)
