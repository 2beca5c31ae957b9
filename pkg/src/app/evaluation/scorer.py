from typing import List, Optional, Sequence, Set, Tuple

from app.detector.measurement_detector import parse_number
from domain.models import ConfusionCounts, Extraction, LabeledMeasurement, LabeledSentence, RelatedWord
from utils.logger import setup_logger

logger = setup_logger(__name__)

Pair = Tuple[Optional[Extraction], Optional[LabeledMeasurement]]


def surface_forms(related: RelatedWord) -> List[str]:
    """
    Lower-cased names a labeled entity may use for `related`: the bare word, then the word
    prefixed by each contiguous run of its preceding descriptors ("cutleaf teasal").

    Any descriptor kind counts, adjectival modifiers included, not only compound parts:
    labeled data names attributes with their adjective ("spatial resolution").
    """
    forms = [related.raw_name.lower()]
    by_index = {d.token_index: d.raw_name for d in related.descriptors}
    words = [related.raw_name]
    index = related.token_index - 1
    while index in by_index:
        words.insert(0, by_index[index])
        forms.append(" ".join(words).lower())
        index -= 1
    return forms


def _greedy(extracted: Sequence[RelatedWord], entities: Sequence[str], used: Set[int],
            matched: Set[int], compound: bool) -> None:
    for e_index, entity in enumerate(entities):
        if e_index in matched:
            continue
        wanted = entity.strip().lower()
        for r_index, related in enumerate(extracted):
            if r_index in used:
                continue
            forms = surface_forms(related)
            hit = wanted in forms[1:] if compound else wanted == forms[0]
            if hit:
                used.add(r_index)
                matched.add(e_index)
                break


def score_sentence(extracted: Sequence[RelatedWord], entities: Sequence[str]) -> ConfusionCounts:
    """
    One-to-one greedy matching of labeled entity names against extracted related words.
    Bare-name matches are taken first, descriptor-prefixed names second, so a compound
    label cannot steal a word another label names exactly.
    """
    used: Set[int] = set()
    matched: Set[int] = set()
    _greedy(extracted, entities, used, matched, compound=False)
    _greedy(extracted, entities, used, matched, compound=True)
    return ConfusionCounts(tp=len(matched), fp=len(extracted) - len(used), fn=len(entities) - len(matched))


def _same_measurement(extraction: Extraction, measurement: LabeledMeasurement) -> bool:
    quantity = extraction.quantity
    if measurement.unit.strip() != quantity.raw_unit_name:
        return False
    value = parse_number(measurement.number.strip())
    return value is not None and value == quantity.parsed_value


def align_measurements(extractions: Sequence[Extraction], labeled: Sequence[LabeledMeasurement]) -> List[Pair]:
    """
    Pairs each labeled measurement with the first unused extraction carrying the same value
    and unit; repeated measurements resolve in textual order. Leftovers on either side are
    returned paired with None.
    """
    ordered = sorted(extractions, key=lambda e: e.quantity.value_offsets)
    used: Set[int] = set()
    pairs: List[Pair] = []
    for measurement in labeled:
        found = None
        for index, extraction in enumerate(ordered):
            if index not in used and _same_measurement(extraction, measurement):
                found = index
                break
        if found is None:
            pairs.append((None, measurement))
        else:
            used.add(found)
            pairs.append((ordered[found], measurement))
    pairs.extend((extraction, None) for index, extraction in enumerate(ordered) if index not in used)
    return pairs


def score_measurements(extractions: Sequence[Extraction], labeled: LabeledSentence) -> ConfusionCounts:
    """Confusion counts for one labeled sentence against the extractions made from it."""
    total = ConfusionCounts()
    for extraction, measurement in align_measurements(extractions, labeled.measurements):
        related = extraction.related if extraction is not None else ()
        entities = measurement.entities if measurement is not None else []
        if extraction is None:
            logger.debug(f"Sentence {labeled.sentence_num}: no extraction for labeled "
                         f"'{measurement.number} {measurement.unit}'.")
        elif measurement is None:
            logger.debug(f"Sentence {labeled.sentence_num}: unlabeled extraction "
                         f"'{extraction.quantity.raw_value} {extraction.quantity.raw_unit_name}'.")
        total = total + score_sentence(related, entities)
    return total
