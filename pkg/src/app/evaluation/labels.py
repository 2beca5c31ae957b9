import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ValidationError, validator

from domain.errors import LabelSchemaError
from domain.models import LabeledMeasurement, LabeledSentence
from utils.logger import setup_logger

logger = setup_logger(__name__)


class LabelMeasurementSchema(BaseModel):
    number: str
    unit: str
    related: List[Dict[str, List[str]]] = []

    @validator("number", "unit")
    def not_blank(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("must not be blank")
        return value


class LabelSentenceSchema(BaseModel):
    sentence_num: int
    sentence: str
    measurements: List[LabelMeasurementSchema]
    source: Optional[str] = None


def _to_labeled(raw: Any, default_source: Optional[str]) -> LabeledSentence:
    sentence_num = raw.get("sentence_num") if isinstance(raw, dict) else None
    try:
        schema = LabelSentenceSchema.parse_obj(raw)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"])
        raise LabelSchemaError(f"field '{field}': {first['msg']}", sentence_num=sentence_num) from None

    lowered = schema.sentence.lower()
    measurements = []
    for m in schema.measurements:
        related = []
        for entry in m.related:
            for entity, descriptors in entry.items():
                if not entity.strip():
                    raise LabelSchemaError("related entity names must be non-empty", schema.sentence_num)
                if entity.lower() not in lowered:
                    raise LabelSchemaError(f"related entity '{entity}' does not occur in the sentence",
                                           schema.sentence_num)
                related.append((entity, tuple(descriptors)))
        measurements.append(LabeledMeasurement(number=m.number, unit=m.unit, related=tuple(related)))
    return LabeledSentence(
        sentence_num=schema.sentence_num,
        sentence=schema.sentence,
        measurements=tuple(measurements),
        source=schema.source or default_source,
    )


def load_labels(content: str, default_source: Optional[str] = None) -> List[LabeledSentence]:
    """
    Parses labeled evaluation data: a JSON array of labeled sentences or one object per line.
    `default_source` tags records that carry no `source` field.

    :raises LabelSchemaError: with the sentence_num of the offending record when known.
    """
    stripped = content.strip()
    if not stripped:
        return []
    if stripped.startswith("["):
        try:
            records = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise LabelSchemaError(f"invalid JSON: {e}") from None
    else:
        records = []
        for number, line in enumerate(content.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError as e:
                raise LabelSchemaError(f"line {number}: invalid JSON: {e}") from None

    labels = [_to_labeled(record, default_source) for record in records]
    seen = set()
    for label in labels:
        if label.sentence_num in seen:
            raise LabelSchemaError("duplicate sentence_num", label.sentence_num)
        seen.add(label.sentence_num)
    logger.debug(f"Loaded {len(labels)} labeled sentences.")
    return labels


def labeled_to_dict(label: LabeledSentence) -> Dict[str, Any]:
    item: Dict[str, Any] = {
        "measurements": [
            {
                "number": m.number,
                "unit": m.unit,
                "related": [{entity: list(descriptors)} for entity, descriptors in m.related],
            }
            for m in label.measurements
        ],
        "sentence_num": label.sentence_num,
        "sentence": label.sentence,
    }
    if label.source is not None:
        item["source"] = label.source
    return item
