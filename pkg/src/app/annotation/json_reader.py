import json
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ValidationError

from app.annotation.sentence_builder import build_sentence, make_arc
from domain.errors import AnnotationSchemaError
from domain.models import Sentence, Token
from utils.logger import setup_logger

logger = setup_logger(__name__)


class TokenSchema(BaseModel):
    index: int
    text: str
    pos: str
    offsetStart: int
    offsetEnd: int
    lemma: Optional[str] = None


class DepSchema(BaseModel):
    head: int
    dependent: int
    label: str


class SentenceSchema(BaseModel):
    id: int
    text: str
    tokens: List[TokenSchema]
    deps: List[DepSchema] = []


def _first_error(error: ValidationError) -> Tuple[str, str]:
    first = error.errors()[0]
    return ".".join(str(part) for part in first["loc"]), first["msg"]


def _to_sentence(raw: Dict[str, Any]) -> Sentence:
    sentence_id = raw.get("id") if isinstance(raw, dict) else None
    try:
        schema = SentenceSchema.parse_obj(raw)
    except ValidationError as e:
        field, msg = _first_error(e)
        raise AnnotationSchemaError(msg, field=field, sentence_id=sentence_id) from None

    tokens = [
        Token(
            index=t.index,
            text=t.text,
            pos=t.pos,
            offset_start=t.offsetStart,
            offset_end=t.offsetEnd,
            lemma=t.lemma,
        )
        for t in schema.tokens
    ]
    arcs = [make_arc(d.head, d.dependent, d.label) for d in schema.deps]
    return build_sentence(schema.id, schema.text, tokens, arcs)


def sentences_from_document(document: Any) -> List[Sentence]:
    """Converts an already-decoded annotation document into sentences."""
    if not isinstance(document, dict) or "sentences" not in document:
        raise AnnotationSchemaError("annotation document must be an object with a 'sentences' list",
                                    field="sentences")
    raw_sentences = document["sentences"]
    if not isinstance(raw_sentences, list):
        raise AnnotationSchemaError("'sentences' must be a list", field="sentences")
    return [_to_sentence(raw) for raw in raw_sentences]


def parse_annotation_json(content: str) -> List[Sentence]:
    """
    Parses the annotation JSON format:
    {"sentences": [{"id", "text", "tokens": [...], "deps": [{"head", "dependent", "label"}]}]}

    :raises AnnotationSchemaError: on invalid JSON, a missing field or a violated token invariant.
    """
    try:
        document = json.loads(content)
    except json.JSONDecodeError as e:
        raise AnnotationSchemaError(f"invalid JSON: {e}") from None
    sentences = sentences_from_document(document)
    logger.debug(f"Parsed {len(sentences)} annotated sentences from JSON.")
    return sentences


def sentence_to_dict(sentence: Sentence) -> Dict[str, Any]:
    tokens = []
    for token in sentence.tokens:
        item: Dict[str, Any] = {
            "index": token.index,
            "text": token.text,
            "pos": token.pos,
            "offsetStart": token.offset_start,
            "offsetEnd": token.offset_end,
        }
        if token.lemma is not None:
            item["lemma"] = token.lemma
        tokens.append(item)
    return {
        "id": sentence.id,
        "text": sentence.text,
        "tokens": tokens,
        "deps": [
            {"head": arc.head_index, "dependent": arc.dependent_index, "label": arc.raw_label}
            for arc in sentence.arcs
        ],
    }


def dump_annotation_json(sentences: Sequence[Sentence], indent: Optional[int] = None) -> str:
    """Serializes sentences back to the annotation JSON format."""
    return json.dumps({"sentences": [sentence_to_dict(s) for s in sentences]},
                      ensure_ascii=False, indent=indent)
