from typing import Iterable, List, Optional, Sequence, Set, Tuple

from app.graph.sentence_graph import split_enhanced_label
from domain.errors import AnnotationSchemaError
from domain.models import DependencyArc, Sentence, Token
from utils.logger import setup_logger

logger = setup_logger(__name__)


def make_arc(head: int, dependent: int, raw_label: str) -> DependencyArc:
    if head == 0:
        # Root arcs carry no connector ("root" only)
        base_type, _ = split_enhanced_label(raw_label)
        return DependencyArc(0, dependent, base_type, None, base_type)
    base_type, connector = split_enhanced_label(raw_label)
    normalized = base_type if connector is None else f"{base_type}:{connector}"
    return DependencyArc(head, dependent, base_type, connector, normalized)


def dedupe_arcs(arcs: Iterable[DependencyArc]) -> List[DependencyArc]:
    """Drops exact (head, dependent, raw label) repeats, keeping first occurrence order."""
    seen: Set[Tuple[int, int, str]] = set()
    unique = []
    for arc in arcs:
        key = (arc.head_index, arc.dependent_index, arc.raw_label)
        if key in seen:
            continue
        seen.add(key)
        unique.append(arc)
    return unique


def build_sentence(
    sentence_id: int,
    text: str,
    tokens: Sequence[Token],
    arcs: Iterable[DependencyArc],
) -> Sentence:
    """
    Validates token and arc invariants and returns an immutable Sentence.

    :raises AnnotationSchemaError: on any violated invariant.
    """
    if not tokens:
        raise AnnotationSchemaError("sentence has no tokens", field="tokens", sentence_id=sentence_id)

    previous_end: Optional[int] = None
    for position, token in enumerate(tokens, start=1):
        if token.index != position:
            raise AnnotationSchemaError(
                f"token index {token.index} out of sequence (expected {position})",
                field="tokens.index", sentence_id=sentence_id,
            )
        if token.offset_start < 0 or token.offset_end <= token.offset_start:
            raise AnnotationSchemaError(
                f"token {token.index} has offsetEnd {token.offset_end} <= offsetStart {token.offset_start}",
                field="tokens.offsetEnd", sentence_id=sentence_id,
            )
        if previous_end is not None and token.offset_start < previous_end:
            raise AnnotationSchemaError(
                f"token {token.index} overlaps the previous token",
                field="tokens.offsetStart", sentence_id=sentence_id,
            )
        if text[token.offset_start:token.offset_end] != token.text:
            raise AnnotationSchemaError(
                f"token {token.index} '{token.text}' does not match sentence text "
                f"'{text[token.offset_start:token.offset_end]}' at {token.offset_start}-{token.offset_end}",
                field="tokens.text", sentence_id=sentence_id,
            )
        if not token.pos:
            raise AnnotationSchemaError(
                f"token {token.index} has an empty POS tag", field="tokens.pos", sentence_id=sentence_id
            )
        previous_end = token.offset_end

    token_count = len(tokens)
    unique_arcs = dedupe_arcs(arcs)
    governed: Set[int] = set()
    for arc in unique_arcs:
        if arc.head_index == arc.dependent_index:
            raise AnnotationSchemaError(
                f"arc {arc.raw_label} loops on token {arc.head_index}", field="deps", sentence_id=sentence_id
            )
        if not 0 <= arc.head_index <= token_count or not 1 <= arc.dependent_index <= token_count:
            raise AnnotationSchemaError(
                f"arc {arc.head_index}->{arc.dependent_index} ({arc.raw_label}) outside token range 1..{token_count}",
                field="deps", sentence_id=sentence_id,
            )
        governed.add(arc.dependent_index)

    ungoverned = [t.index for t in tokens if t.index not in governed]
    if ungoverned and token_count > 1:
        logger.warning(f"Sentence {sentence_id}: tokens without incoming arcs {ungoverned} (fragment parse).")

    return Sentence(id=sentence_id, text=text, tokens=tuple(tokens), arcs=tuple(unique_arcs))
