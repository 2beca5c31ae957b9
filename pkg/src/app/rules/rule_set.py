from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Tuple, Union

from config.default import WILDCARD_CONNECTOR
from domain.models import MeasurementFormat


@dataclass(frozen=True)
class Accept:
    """Terminal action: the matched token is a related word (null in the rule file)."""

    def __repr__(self) -> str:
        return "ACCEPT"


ACCEPT = Accept()


@dataclass(frozen=True)
class VerbExpansion:
    """
    Special-case action: search the clause around the matched token. Dependents reached
    through `allowed_deps` are candidate related words; neighbors reached through
    `chain_deps` that are verbs are searched recursively, up to `max_depth` levels.
    With `include_self` the matched token is itself a related word.
    """
    allowed_deps: Tuple[str, ...]
    chain_deps: Tuple[str, ...] = ()
    max_depth: int = 1
    include_self: bool = False


Action = Union[Accept, VerbExpansion]


@dataclass(frozen=True)
class PosMatcher:
    pos_in: Mapping[str, Action] = field(default_factory=dict)
    pos_equals: Mapping[str, Action] = field(default_factory=dict)


FormatMap = Mapping[MeasurementFormat, PosMatcher]


@dataclass(frozen=True)
class RuleNode:
    enhanced: bool
    connectors: Optional[Mapping[str, FormatMap]] = None
    formats: Optional[FormatMap] = None


@dataclass(frozen=True)
class RuleSet:
    nodes: Mapping[str, RuleNode] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.nodes)

    def base_types(self) -> Tuple[str, ...]:
        return tuple(sorted(self.nodes))


def lookup(
    rules: RuleSet, base_type: str, connector: Optional[str], fmt: MeasurementFormat
) -> Optional[PosMatcher]:
    """
    Resolves the nested path base type -> connector (enhanced nodes only: exact word, then
    the "*" wildcard) -> measurement format. Any miss returns None.
    """
    node = rules.nodes.get(base_type)
    if node is None:
        return None
    if node.enhanced:
        if connector is None or not node.connectors:
            return None
        formats: Optional[FormatMap] = node.connectors.get(connector)
        if formats is None:
            formats = node.connectors.get(WILDCARD_CONNECTOR)
        if formats is None:
            return None
    else:
        formats = node.formats
        if formats is None:
            return None
    return formats.get(fmt)


def match_pos(matcher: PosMatcher, pos_label: str) -> Optional[Action]:
    """
    pos_equals is consulted first (exact tag); otherwise the longest pos_in key that
    prefixes the tag wins ("NN" matches "NNS").
    """
    action = matcher.pos_equals.get(pos_label)
    if action is not None:
        return action
    best: Optional[str] = None
    for prefix in matcher.pos_in:
        if pos_label.startswith(prefix) and (best is None or len(prefix) > len(best)):
            best = prefix
    return matcher.pos_in[best] if best is not None else None


def pos_keys(rules: RuleSet) -> Dict[str, int]:
    """Distinct POS keys used by a rule set with their number of occurrences."""
    counts: Dict[str, int] = {}

    def visit(formats: FormatMap) -> None:
        for matcher in formats.values():
            for key in list(matcher.pos_in) + list(matcher.pos_equals):
                counts[key] = counts.get(key, 0) + 1

    for node in rules.nodes.values():
        if node.connectors:
            for formats in node.connectors.values():
                visit(formats)
        if node.formats:
            visit(node.formats)
    return counts
