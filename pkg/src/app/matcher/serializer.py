import json
from decimal import Decimal
from typing import Any, Dict, Iterable, List, Optional, TextIO, Union

from domain.errors import AnnotationSchemaError
from domain.models import (
    Descriptor,
    Extraction,
    NormalizedUnit,
    Quantity,
    RelatedWord,
    SentenceExtractions,
)
from utils.logger import setup_logger

logger = setup_logger(__name__)

Number = Union[int, float]

MAX_INT_DIGITS = 309


def json_number(value: Decimal) -> Number:
    """
    Integral values become ints ("10", not "10.0"); others a float. Integral values with
    more than MAX_INT_DIGITS digits are written as floats too.
    """
    if value == value.to_integral_value() and value.adjusted() < MAX_INT_DIGITS:
        return int(value)
    return float(value)


def _descriptor_to_dict(descriptor: Descriptor) -> Dict[str, Any]:
    return {"rawName": descriptor.raw_name, "tokenIndex": str(descriptor.token_index)}


def _related_to_dict(related: RelatedWord) -> Dict[str, Any]:
    return {
        "rawName": related.raw_name,
        "connector": related.connector,
        "offsetEnd": related.offset_end,
        "relationForm": related.relation_form,
        "offsetStart": related.offset_start,
        "tokenIndex": related.token_index,
        "descriptors": [_descriptor_to_dict(d) for d in related.descriptors],
    }


def _quantity_to_dict(quantity: Quantity) -> Dict[str, Any]:
    unit = quantity.normalized_unit
    item: Dict[str, Any] = {
        "parsedValue": json_number(quantity.parsed_value),
        "normalizedQuantity": json_number(quantity.normalized_quantity),
        "rawValue": quantity.raw_value,
        "rawUnit": {
            "offsetStart": quantity.unit_offsets[0],
            "offsetEnd": quantity.unit_offsets[1],
            "tokenIndices": [str(i) for i in quantity.unit_token_indices],
            "name": quantity.raw_unit_name,
        },
        "offsetEnd": quantity.value_offsets[1],
        "offsetStart": quantity.value_offsets[0],
        "tokenIndex": quantity.value_token_index,
        "normalizedUnit": {"type": unit.type, "name": unit.name, "system": unit.system},
        "type": quantity.type,
    }
    if quantity.descriptors:
        item["descriptors"] = [_descriptor_to_dict(d) for d in quantity.descriptors]
    return item


def extraction_to_dict(extraction: Extraction) -> Dict[str, Any]:
    return {
        "type": extraction.type,
        "quantity": _quantity_to_dict(extraction.quantity),
        "related": [_related_to_dict(r) for r in extraction.related],
    }


def serialize_extraction(extraction: Extraction, indent: Optional[int] = None) -> str:
    """Field names, nesting and key order of the output record are fixed."""
    return json.dumps(extraction_to_dict(extraction), ensure_ascii=False, indent=indent)


def envelope_to_dict(envelope: SentenceExtractions) -> Dict[str, Any]:
    return {
        "sentence_num": envelope.sentence_num,
        "sentence": envelope.sentence,
        "measurements": [extraction_to_dict(e) for e in envelope.measurements],
    }


def serialize_envelope(envelope: SentenceExtractions) -> str:
    """One JSON Lines record (no trailing newline)."""
    return json.dumps(envelope_to_dict(envelope), ensure_ascii=False)


def _decimal(value: Any) -> Decimal:
    # str() keeps 1e-08 from turning into 9.99...E-9 under Decimal(float)
    return Decimal(str(value))


def _descriptors_from(items: Iterable[Dict[str, Any]]) -> tuple:
    return tuple(Descriptor(raw_name=d["rawName"], token_index=int(d["tokenIndex"])) for d in items)


def extraction_from_dict(item: Dict[str, Any]) -> Extraction:
    q = item["quantity"]
    unit = q["normalizedUnit"]
    quantity = Quantity(
        parsed_value=_decimal(q["parsedValue"]),
        normalized_quantity=_decimal(q["normalizedQuantity"]),
        raw_value=q["rawValue"],
        raw_unit_name=q["rawUnit"]["name"],
        unit_offsets=(q["rawUnit"]["offsetStart"], q["rawUnit"]["offsetEnd"]),
        unit_token_indices=tuple(int(i) for i in q["rawUnit"]["tokenIndices"]),
        value_offsets=(q["offsetStart"], q["offsetEnd"]),
        value_token_index=q["tokenIndex"],
        normalized_unit=NormalizedUnit(name=unit["name"], type=unit["type"], system=unit["system"]),
        descriptors=_descriptors_from(q.get("descriptors", [])),
    )
    related = tuple(
        RelatedWord(
            raw_name=r["rawName"],
            token_index=r["tokenIndex"],
            offset_start=r["offsetStart"],
            offset_end=r["offsetEnd"],
            relation_form=r["relationForm"],
            connector=r.get("connector", ""),
            descriptors=_descriptors_from(r.get("descriptors", [])),
        )
        for r in item.get("related", [])
    )
    return Extraction(quantity=quantity, related=related, type=item.get("type", "value"))


def load_extractions(source: Union[TextIO, str]) -> List[SentenceExtractions]:
    """
    Reads an extraction JSON Lines file back into envelopes.

    :raises AnnotationSchemaError: naming the offending line.
    """
    lines = source.splitlines() if isinstance(source, str) else source
    envelopes = []
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
            envelopes.append(SentenceExtractions(
                sentence_num=record["sentence_num"],
                sentence=record["sentence"],
                measurements=tuple(extraction_from_dict(m) for m in record["measurements"]),
            ))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
            raise AnnotationSchemaError(f"extraction line {number} is malformed: {e!r}") from None
    logger.debug(f"Loaded {len(envelopes)} extraction records.")
    return envelopes
