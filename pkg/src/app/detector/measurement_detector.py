import re
from decimal import Decimal, InvalidOperation
from typing import List, Optional, Set, Tuple

from app.detector.unit_gazetteer import UnitGazetteer
from domain.models import MeasurementFormat, MeasurementSpan, NormalizedUnit, Sentence, Token
from utils.logger import setup_logger

logger = setup_logger(__name__)

# Optional sign, digits with optional "," thousands groups, optional decimals and exponent
UNSIGNED_PATTERN = r"(?:\d{1,3}(?:,\d{3})+|\d+)(?:\.\d+)?(?:[eE][+-]?\d+)?"
NUMBER_PATTERN = r"[+-]?" + UNSIGNED_PATTERN
NUMBER_RE = re.compile(NUMBER_PATTERN)
RANGE_RE = re.compile(rf"({NUMBER_PATTERN})-({UNSIGNED_PATTERN})")

MAX_UNIT_TOKENS = 3
# Values must stay finite as a float after conversion to the base unit
MAX_ADJUSTED_EXPONENT = 300
UNKNOWN = "unknown"


def parse_number(raw: str) -> Optional[Decimal]:
    """Locale-independent numeric value of `raw` ("1,900" -> 1900, "1.9e3" -> 1.9E+3)."""
    if not NUMBER_RE.fullmatch(raw):
        return None
    try:
        value = Decimal(raw.replace(",", ""))
    except InvalidOperation:
        return None
    if value and abs(value.adjusted()) > MAX_ADJUSTED_EXPONENT:
        return None
    return value


def classify_format(text: str, value_end: int, unit_start: int) -> Optional[MeasurementFormat]:
    """
    Classifies the gap between a value ending at `value_end` and a unit starting at
    `unit_start` (character offsets into `text`, same token or different tokens).

    Returns None when the gap is neither empty, a single hyphen nor whitespace:
    the candidate is not a measurement.
    """
    if unit_start < value_end:
        return None
    gap = text[value_end:unit_start]
    if gap == "":
        return MeasurementFormat.ATTACHED
    if gap == "-":
        return MeasurementFormat.HYPHENATED
    if gap.isspace():
        return MeasurementFormat.SPACE_BETWEEN
    return None


def _unit_from_following_tokens(
    sentence: Sentence, start: int, gazetteer: UnitGazetteer
) -> Optional[Tuple[str, Tuple[int, ...]]]:
    """Longest gazetteer surface form spanning tokens start..start+k."""
    tokens = sentence.tokens
    best = None
    first = tokens[start - 1]
    for last in range(start, min(start + MAX_UNIT_TOKENS - 1, len(tokens)) + 1):
        surface = sentence.text[first.offset_start:tokens[last - 1].offset_end]
        if surface in gazetteer:
            best = (surface, tuple(range(start, last + 1)))
    return best


def _value_part(token: Token) -> Optional[Tuple[str, int, int, str]]:
    """
    Numeric part of a token as (raw value, start, end, remainder) with offsets relative to
    the token. A "1800-1900" or "1800-1900nm" range keeps only its right element.
    """
    text = token.text
    range_match = RANGE_RE.match(text)
    if range_match:
        start, end = range_match.span(2)
        return range_match.group(2), start, end, text[end:]
    match = NUMBER_RE.match(text)
    if not match:
        return None
    return match.group(0), 0, match.end(), text[match.end():]


def _span_for_token(
    sentence: Sentence, token: Token, gazetteer: UnitGazetteer
) -> Optional[MeasurementSpan]:
    part = _value_part(token)
    if part is None:
        return None
    raw_value, rel_start, rel_end, remainder = part
    parsed = parse_number(raw_value)
    if parsed is None:
        return None
    value_start = token.offset_start + rel_start
    value_end = token.offset_start + rel_end

    if remainder:
        # Unit inside the same token: "10m", "10%", "10-m"
        unit_text = remainder[1:] if remainder.startswith("-") else remainder
        if unit_text not in gazetteer:
            return None
        unit_start = token.offset_end - len(unit_text)
        fmt = classify_format(sentence.text, value_end, unit_start)
        if fmt is None:
            return None
        return MeasurementSpan(
            value_token_index=token.index,
            unit_token_indices=(token.index,),
            raw_value=raw_value,
            parsed_value=parsed,
            raw_unit_name=unit_text,
            format=fmt,
            value_offsets=(value_start, value_end),
            unit_offsets=(unit_start, token.offset_end),
        )

    if token.index >= len(sentence.tokens):
        return None
    unit_start_index = token.index + 1
    following = sentence.token(unit_start_index)
    # "10 - m" tokenized with a standalone hyphen glued to both sides
    if (following.text == "-" and following.offset_start == value_end
            and unit_start_index < len(sentence.tokens)
            and sentence.token(unit_start_index + 1).offset_start == following.offset_end):
        unit_start_index += 1
    found = _unit_from_following_tokens(sentence, unit_start_index, gazetteer)
    if found is None:
        return None
    surface, unit_indices = found
    unit_first = sentence.token(unit_indices[0])
    unit_last = sentence.token(unit_indices[-1])
    fmt = classify_format(sentence.text, value_end, unit_first.offset_start)
    if fmt is None:
        logger.debug(f"Sentence {sentence.id}: discarded '{raw_value}' + '{surface}' (gap not a measurement format)")
        return None
    return MeasurementSpan(
        value_token_index=token.index,
        unit_token_indices=unit_indices,
        raw_value=raw_value,
        parsed_value=parsed,
        raw_unit_name=surface,
        format=fmt,
        value_offsets=(value_start, value_end),
        unit_offsets=(unit_first.offset_start, unit_last.offset_end),
    )


def detect_measurements(sentence: Sentence, gazetteer: UnitGazetteer) -> List[MeasurementSpan]:
    """
    Finds value/unit spans: a token (or token prefix) parsing as a number followed by a
    gazetteer unit in the same token, the next token(s), or after a hyphen. Spans never
    overlap and are ordered by value token index.
    """
    spans: List[MeasurementSpan] = []
    consumed: Set[int] = set()
    for token in sentence.tokens:
        if token.index in consumed:
            continue
        span = _span_for_token(sentence, token, gazetteer)
        if span is None:
            continue
        occupied = set(span.token_indices)
        if occupied & consumed:
            continue
        consumed.update(occupied)
        # the hyphen token between "10" "-" "m" belongs to the measurement too
        consumed.update(range(span.value_token_index, max(span.unit_token_indices) + 1))
        spans.append(span)
    return spans


def normalize(span: MeasurementSpan, gazetteer: UnitGazetteer) -> Tuple[Decimal, NormalizedUnit]:
    """
    Converts the span's value to its base unit. Units missing from the gazetteer keep
    their raw name and value with system "unknown".
    """
    unit = gazetteer.lookup(span.raw_unit_name)
    if unit is None:
        return span.parsed_value, NormalizedUnit(name=span.raw_unit_name, type=UNKNOWN, system=UNKNOWN)
    quantity = span.parsed_value * unit.factor_to_base + unit.offset_to_base
    return quantity, unit
