from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from domain.errors import GraphContractError
from domain.models import Sentence


def split_enhanced_label(raw_label: str) -> Tuple[str, Optional[str]]:
    """
    Splits an enhanced dependency label on its first colon:
    "conj:and" -> ("conj", "and"), "nsubj" -> ("nsubj", None).
    """
    base_type, sep, connector = raw_label.partition(":")
    if not sep or not connector:
        return base_type, None
    return base_type, connector


@dataclass(frozen=True)
class Edge:
    """
    Undirected edge between two token indices. `head` and `dependent` keep the
    orientation of the dependency arc it was built from.
    """
    head: int
    dependent: int
    base_type: str
    connector: Optional[str]
    raw_label: str

    @property
    def endpoints(self) -> Tuple[int, int]:
        return self.head, self.dependent

    def other(self, node: int) -> int:
        return self.dependent if node == self.head else self.head

    def is_head(self, node: int) -> bool:
        return node == self.head


class SentenceGraph:
    """
    Undirected labeled multigraph over the tokens of one sentence.
    Root arcs are left out: their head is a virtual node the model does not include.
    """

    def __init__(self, node_count: int, edges: List[Edge], pos: Sequence[str] = (), words: Sequence[str] = ()):
        self.node_count = node_count
        # node labels, index 0 unused so that pos[i] is the tag of token i
        self.pos: Tuple[str, ...] = ("",) + tuple(pos) if pos else ("",) * (node_count + 1)
        self.words: Tuple[str, ...] = ("",) + tuple(words) if words else ("",) * (node_count + 1)
        self.edges: Tuple[Edge, ...] = tuple(edges)
        adjacency: Dict[int, List[Edge]] = {node: [] for node in range(1, node_count + 1)}
        for edge in self.edges:
            adjacency[edge.head].append(edge)
            if edge.dependent != edge.head:
                adjacency[edge.dependent].append(edge)
        for node, incident in adjacency.items():
            incident.sort(key=lambda e, n=node: (e.other(n), e.raw_label))
        self._adjacency = {node: tuple(incident) for node, incident in adjacency.items()}

    def incident(self, node: int) -> Tuple[Edge, ...]:
        if not isinstance(node, int) or node < 1 or node > self.node_count:
            raise GraphContractError(f"node {node} outside [1, {self.node_count}]")
        return self._adjacency[node]

    def __repr__(self) -> str:
        return f"SentenceGraph(nodes={self.node_count}, edges={len(self.edges)})"


def build_graph(sentence: Sentence) -> SentenceGraph:
    """
    One node per token (labeled with its POS tag), one undirected edge per non-root
    dependency arc.
    """
    edges = [
        Edge(arc.head_index, arc.dependent_index, arc.base_type, arc.connector, arc.raw_label)
        for arc in sentence.arcs
        if not arc.is_root
    ]
    return SentenceGraph(
        len(sentence.tokens),
        edges,
        pos=[t.pos for t in sentence.tokens],
        words=[t.text for t in sentence.tokens],
    )


def incident_edges(graph: SentenceGraph, node: int) -> List[Edge]:
    """
    All edges touching `node`, ordered by (other endpoint index, raw label).
    """
    return list(graph.incident(node))
