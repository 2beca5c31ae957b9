from typing import List, Optional, Set, Tuple

from app.detector.measurement_detector import classify_format, parse_number
from domain.errors import AlignmentError
from domain.models import LabeledMeasurement, LabeledSentence, MeasurementSpan, Sentence, Token


def _token_at(sentence: Sentence, offset: int) -> Optional[Token]:
    for token in sentence.tokens:
        if token.offset_start <= offset < token.offset_end:
            return token
    return None


def _tokens_overlapping(sentence: Sentence, start: int, end: int) -> Tuple[int, ...]:
    return tuple(t.index for t in sentence.tokens if t.offset_start < end and start < t.offset_end)


def _occurrences(text: str, needle: str) -> List[int]:
    positions = []
    start = text.find(needle)
    while start != -1:
        positions.append(start)
        start = text.find(needle, start + 1)
    return positions


def _unit_after(text: str, value_end: int, unit: str) -> Optional[int]:
    """Start offset of `unit` after a measurement-format gap (none, whitespace or '-')."""
    position = value_end
    while position < len(text) and text[position].isspace():
        position += 1
    candidates = [value_end, position]
    if value_end < len(text) and text[value_end] == "-":
        candidates.append(value_end + 1)
    for start in candidates:
        if not text.startswith(unit, start) or classify_format(text, value_end, start) is None:
            continue
        # "m" must not be the start of "miles"
        unit_end = start + len(unit)
        if unit_end == len(text) or not (text[unit_end].isalnum() and text[unit_end - 1].isalnum()):
            return start
    return None


def _align(
    sentence: Sentence, measurement: LabeledMeasurement, consumed: Set[int]
) -> Optional[MeasurementSpan]:
    text = sentence.text
    parsed = parse_number(measurement.number)
    if parsed is None:
        return None
    token_starts = {t.offset_start for t in sentence.tokens}
    for start in _occurrences(text, measurement.number):
        end = start + len(measurement.number)
        if start in consumed:
            continue
        # the number must not be a fragment of a longer number ("10" inside "2010" or "10.5")
        before = text[start - 1] if start > 0 else " "
        if start not in token_starts and (before.isalnum() or before in ".,"):
            continue
        if end < len(text) and (text[end].isdigit() or (text[end] in ".," and end + 1 < len(text)
                                                         and text[end + 1].isdigit())):
            continue
        unit_start = _unit_after(text, end, measurement.unit)
        if unit_start is None:
            continue
        unit_end = unit_start + len(measurement.unit)
        value_token = _token_at(sentence, start)
        unit_tokens = _tokens_overlapping(sentence, unit_start, unit_end)
        if value_token is None or not unit_tokens:
            continue
        consumed.add(start)
        return MeasurementSpan(
            value_token_index=value_token.index,
            unit_token_indices=unit_tokens,
            raw_value=measurement.number,
            parsed_value=parsed,
            raw_unit_name=measurement.unit,
            format=classify_format(text, end, unit_start),
            value_offsets=(start, end),
            unit_offsets=(unit_start, unit_end),
        )
    return None


def apply_override_spans(sentence: Sentence, labeled: LabeledSentence) -> List[MeasurementSpan]:
    """
    Builds spans from ground-truth labels instead of running the detector. Each label takes
    the leftmost unconsumed occurrence of its number followed by its unit, so repeated
    measurements resolve in textual order.

    :raises AlignmentError: when a labeled number/unit pair cannot be found in the sentence.
    """
    spans = []
    consumed: Set[int] = set()
    for measurement in labeled.measurements:
        span = _align(sentence, measurement, consumed)
        if span is None:
            raise AlignmentError(
                f"labeled measurement '{measurement.number} {measurement.unit}' not found in sentence text",
                sentence_id=sentence.id,
            )
        spans.append(span)
    return spans
