"""Entity collocation and communication networks with degree centrality.

Both graphs use the same counting rule: within one paragraph, every unordered
pair of distinct entities gets +1 on its edge and the paragraph id appended
as evidence, no matter how often either entity is mentioned in it.
"""

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .corpus import Corpus
from .embedding import Lexicon
from .entities import EntityMention, dominant_entity_types


@dataclass
class Graph:
    """Undirected weighted graph; edge weight equals its evidence count."""

    nodes: dict[str, str] = field(default_factory=dict)       # id -> entity_type
    edges: dict[tuple[str, str], list[str]] = field(default_factory=dict)  # evidence

    def weight(self, a: str, b: str) -> int:
        key = (a, b) if a < b else (b, a)
        return len(self.edges.get(key, ()))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def total_weight(self) -> int:
        return sum(len(ev) for ev in self.edges.values())


def _count_pairs(per_paragraph: Iterable[tuple[str, list[str]]],
                 node_types: Mapping[str, str]) -> Graph:
    graph = Graph()
    for para_id, ids in per_paragraph:
        distinct = sorted(set(ids))
        for i in range(len(distinct)):
            for j in range(i + 1, len(distinct)):
                graph.edges.setdefault((distinct[i], distinct[j]), []).append(para_id)
    for a, b in graph.edges:
        graph.nodes.setdefault(a, node_types.get(a, "UNKNOWN"))
        graph.nodes.setdefault(b, node_types.get(b, "UNKNOWN"))
    for key in graph.edges:
        graph.edges[key].sort()
    return graph


def build_collocation_network(corpus: Corpus, mentions: Sequence[EntityMention]) -> Graph:
    """Edge weight = number of paragraphs co-mentioning the two entities."""
    by_para: dict[str, list[str]] = {}
    for m in mentions:
        by_para.setdefault(m.para_id, []).append(m.canonical_id)
    per_paragraph = [(p.para_id, by_para[p.para_id])
                     for p in corpus.paragraphs if p.para_id in by_para]
    return _count_pairs(per_paragraph, dominant_entity_types(mentions))


@dataclass(frozen=True)
class CommunicationExcerpt:
    para_id: str
    matched_terms: tuple[str, ...]
    participants: tuple[str, ...]


def extract_communications(corpus: Corpus, communication_lexicon: Lexicon,
                           mentions: Sequence[EntityMention]) -> list[CommunicationExcerpt]:
    """Paragraphs containing at least one communication-lexicon token."""
    by_para: dict[str, list[str]] = {}
    for m in mentions:
        by_para.setdefault(m.para_id, []).append(m.canonical_id)
    excerpts: list[CommunicationExcerpt] = []
    for para in corpus.paragraphs:
        matched = sorted(set(para.tokens) & communication_lexicon.terms)
        if matched:
            excerpts.append(CommunicationExcerpt(
                para_id=para.para_id, matched_terms=tuple(matched),
                participants=tuple(sorted(set(by_para.get(para.para_id, []))))))
    return excerpts


def build_communication_network(excerpts: Sequence[CommunicationExcerpt],
                                node_types: Mapping[str, str] | None = None) -> Graph:
    """Pair counting restricted to flagged paragraphs with >= 2 participants."""
    per_paragraph = [(e.para_id, list(e.participants)) for e in excerpts
                     if len(e.participants) >= 2]
    return _count_pairs(per_paragraph, node_types or {})


def degree_centrality(graph: Graph) -> dict[str, tuple[int, int]]:
    """id -> (incident edge count, sum of incident edge weights)."""
    out = {node: (0, 0) for node in graph.nodes}
    for (a, b), evidence in graph.edges.items():
        w = len(evidence)
        for node in (a, b):
            deg, wdeg = out.get(node, (0, 0))
            out[node] = (deg + 1, wdeg + w)
    return out


def graph_to_dict(graph: Graph, min_weight: int = 1) -> dict:
    """JSON-ready export; edges below min_weight are dropped and degrees are
    computed on what remains."""
    kept = Graph(
        nodes={},
        edges={k: ev for k, ev in graph.edges.items() if len(ev) >= min_weight},
    )
    for a, b in kept.edges:
        kept.nodes.setdefault(a, graph.nodes.get(a, "UNKNOWN"))
        kept.nodes.setdefault(b, graph.nodes.get(b, "UNKNOWN"))
    centrality = degree_centrality(kept)
    return {
        "nodes": [
            {"id": node, "type": kept.nodes[node],
             "degree": centrality[node][0], "weighted_degree": centrality[node][1]}
            for node in sorted(kept.nodes)
        ],
        "edges": [
            {"a": a, "b": b, "weight": len(ev), "evidence": list(ev)}
            for (a, b), ev in sorted(kept.edges.items())
        ],
    }


def write_graph_json(graph: Graph, path: Path, min_weight: int = 1) -> None:
    from . import store
    store.write_json(Path(path), graph_to_dict(graph, min_weight=min_weight))


def write_edge_csv(graph: Graph, path: Path, min_weight: int = 1) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["a", "b", "weight"])
        for (a, b), ev in sorted(graph.edges.items()):
            if len(ev) >= min_weight:
                writer.writerow([a, b, len(ev)])


def load_graph(path: Path) -> Graph:
    from . import store
    payload = store.read_json(Path(path))
    graph = Graph()
    for node in payload["nodes"]:
        graph.nodes[node["id"]] = node["type"]
    for edge in payload["edges"]:
        graph.edges[(edge["a"], edge["b"])] = list(edge["evidence"])
    return graph
