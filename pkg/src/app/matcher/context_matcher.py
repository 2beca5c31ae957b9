from dataclasses import dataclass
from functools import lru_cache
from typing import Collection, Dict, Iterable, List, Optional, Set, Tuple

from app.detector.measurement_detector import normalize
from app.detector.unit_gazetteer import UnitGazetteer, load_gazetteer
from app.graph.sentence_graph import Edge, SentenceGraph, build_graph
from app.rules.rule_set import Accept, RuleSet, VerbExpansion, lookup, match_pos
from config.default import (
    CANDIDATE_POS_PREFIX,
    CONNECTOR_BASE_TYPES,
    DESCRIPTOR_DEPS,
    VALUE_MODIFIER_DEPS,
    VERB_POS_PREFIX,
)
from domain.models import Descriptor, Extraction, MeasurementSpan, Quantity, RelatedWord, Sentence
from utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class Candidate:
    """A related-word candidate with the edge path that licensed it, starting at the unit."""
    token_index: int
    path: Tuple[Edge, ...]

    @property
    def relation_form(self) -> str:
        return "/".join(edge.raw_label for edge in self.path)

    @property
    def connector(self) -> str:
        for edge in self.path:
            if edge.base_type in CONNECTOR_BASE_TYPES and edge.connector:
                return edge.connector
        return ""


@lru_cache(maxsize=1)
def default_gazetteer() -> UnitGazetteer:
    return load_gazetteer()


def _matches(edge: Edge, deps: Collection[str]) -> bool:
    return edge.raw_label in deps or edge.base_type in deps


def _preferred_edges(graph: SentenceGraph, node: int, visited: Set[int], deps: Collection[str],
                     node_is_head: Optional[bool] = None) -> List[Edge]:
    """
    One edge per unvisited neighbor among the edges whose label is in `deps`; when basic
    and enhanced variants link the same pair, the enhanced (more specific) one is kept.
    """
    chosen: Dict[int, Edge] = {}
    for edge in graph.incident(node):
        other = edge.other(node)
        if other in visited or not _matches(edge, deps):
            continue
        if node_is_head is not None and edge.is_head(node) != node_is_head:
            continue
        current = chosen.get(other)
        if current is None or (edge.connector is not None and current.connector is None):
            chosen[other] = edge
    return [chosen[other] for other in sorted(chosen)]


def expand_verb_clause(
    graph: SentenceGraph,
    verb_token: int,
    expansion: VerbExpansion,
    visited: Set[int],
    depth: int = 1,
) -> List[Candidate]:
    """
    Searches the clause of `verb_token`: its noun dependents across `allowed_deps` are
    candidates, and verbs reached across `chain_deps` are searched recursively while
    `depth` stays within `max_depth`. `visited` is shared along the recursion and keeps
    every token from being evaluated twice.
    """
    if depth > expansion.max_depth or verb_token in visited:
        return []
    visited.add(verb_token)
    candidates: List[Candidate] = []

    for edge in _preferred_edges(graph, verb_token, visited, expansion.allowed_deps, node_is_head=True):
        other = edge.other(verb_token)
        if graph.pos[other].startswith(CANDIDATE_POS_PREFIX):
            visited.add(other)
            candidates.append(Candidate(other, (edge,)))

    if depth < expansion.max_depth:
        for edge in _preferred_edges(graph, verb_token, visited, expansion.chain_deps):
            other = edge.other(verb_token)
            if other in visited or not graph.pos[other].startswith(VERB_POS_PREFIX):
                continue
            for nested in expand_verb_clause(graph, other, expansion, visited, depth + 1):
                candidates.append(Candidate(nested.token_index, (edge,) + nested.path))
    return candidates


def extract_descriptors(
    graph: SentenceGraph, related: int, exclude: Collection[int] = ()
) -> List[Descriptor]:
    """
    Modifiers of a related word: one hop across amod/compound/nummod/advmod edges
    where the related word is the head. Ordered by token index.
    """
    seen: Set[int] = set()
    descriptors = []
    for edge in graph.incident(related):
        other = edge.other(related)
        if not edge.is_head(related) or edge.base_type not in DESCRIPTOR_DEPS:
            continue
        if other in seen or other in exclude or other == related:
            continue
        seen.add(other)
        descriptors.append(Descriptor(raw_name=graph.words[other], token_index=other))
    return sorted(descriptors, key=lambda d: d.token_index)


def extract_value_modifiers(
    graph: SentenceGraph, value_token: int, exclude: Collection[int] = ()
) -> List[Descriptor]:
    """Adverbial and quantifier modifiers of the value token ("around 40", "roughly 50 m")."""
    seen: Set[int] = set()
    modifiers = []
    for edge in graph.incident(value_token):
        other = edge.other(value_token)
        if not edge.is_head(value_token) or edge.base_type not in VALUE_MODIFIER_DEPS:
            continue
        if other in seen or other in exclude:
            continue
        seen.add(other)
        modifiers.append(Descriptor(raw_name=graph.words[other], token_index=other))
    return sorted(modifiers, key=lambda d: d.token_index)


def _measurement_tokens(span: MeasurementSpan) -> Set[int]:
    indices = span.token_indices
    return set(range(min(indices), max(indices) + 1))


def find_candidates(
    graph: SentenceGraph, span: MeasurementSpan, rules: RuleSet
) -> List[Candidate]:
    """
    Walks the rule-licensed edges around the unit token(s). Direct hits come before
    verb-expansion hits so that the first candidate kept for a token is the direct one.
    """
    blocked = _measurement_tokens(span)
    direct: List[Candidate] = []
    expanded: List[Candidate] = []
    for origin in span.unit_token_indices:
        for edge in graph.incident(origin):
            neighbor = edge.other(origin)
            if neighbor in blocked:
                continue
            matcher = lookup(rules, edge.base_type, edge.connector, span.format)
            if matcher is None:
                continue
            action = match_pos(matcher, graph.pos[neighbor])
            if action is None:
                continue
            if isinstance(action, Accept):
                direct.append(Candidate(neighbor, (edge,)))
                continue
            if action.include_self:
                direct.append(Candidate(neighbor, (edge,)))
            for nested in expand_verb_clause(graph, neighbor, action, set(blocked), depth=1):
                expanded.append(Candidate(nested.token_index, (edge,) + nested.path))

    kept: Dict[int, Candidate] = {}
    for candidate in direct + expanded:
        if candidate.token_index not in blocked and candidate.token_index not in kept:
            kept[candidate.token_index] = candidate
    return [kept[index] for index in sorted(kept)]


def extract_context(
    graph: SentenceGraph,
    sentence: Sentence,
    span: MeasurementSpan,
    rules: RuleSet,
    gazetteer: Optional[UnitGazetteer] = None,
) -> Extraction:
    """
    Builds the extraction for one measurement: normalized quantity, related words reached
    from the unit token under `rules`, descriptors of each related word, and modifiers of
    the value itself.
    """
    gazetteer = gazetteer or default_gazetteer()
    blocked = _measurement_tokens(span)
    related = []
    for candidate in find_candidates(graph, span, rules):
        token = sentence.token(candidate.token_index)
        related.append(RelatedWord(
            raw_name=token.text,
            token_index=token.index,
            offset_start=token.offset_start,
            offset_end=token.offset_end,
            relation_form=candidate.relation_form,
            connector=candidate.connector,
            descriptors=tuple(extract_descriptors(graph, token.index, exclude=blocked)),
        ))

    normalized_quantity, normalized_unit = normalize(span, gazetteer)
    quantity = Quantity(
        parsed_value=span.parsed_value,
        normalized_quantity=normalized_quantity,
        raw_value=span.raw_value,
        raw_unit_name=span.raw_unit_name,
        unit_offsets=span.unit_offsets,
        unit_token_indices=span.unit_token_indices,
        value_offsets=span.value_offsets,
        value_token_index=span.value_token_index,
        normalized_unit=normalized_unit,
        descriptors=tuple(extract_value_modifiers(graph, span.value_token_index, exclude=blocked)),
    )
    return Extraction(quantity=quantity, related=tuple(related))


class ContextMatcher:
    """
    Extraction entry point bound to one rule set and gazetteer; safe to share across threads.
    """

    def __init__(self, rules: RuleSet, gazetteer: UnitGazetteer):
        self.rules = rules
        self.gazetteer = gazetteer

    def extract(self, sentence: Sentence, spans: Iterable[MeasurementSpan]) -> List[Extraction]:
        spans = sorted(spans, key=lambda s: s.value_token_index)
        if not spans:
            return []
        graph = build_graph(sentence)
        extractions = [extract_context(graph, sentence, span, self.rules, self.gazetteer) for span in spans]
        logger.debug(f"Sentence {sentence.id}: {len(extractions)} measurements, "
                     f"{sum(len(e.related) for e in extractions)} related words.")
        return extractions
