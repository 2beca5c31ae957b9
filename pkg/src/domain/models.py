from dataclasses import dataclass, field
from decimal import Decimal
from enum import Enum
from typing import Dict, List, Optional, Tuple


@dataclass(frozen=True)
class Token:
    """
    A token of an annotated sentence. `index` is 1-based, offsets are end-exclusive.
    """
    index: int
    text: str
    pos: str
    offset_start: int
    offset_end: int
    lemma: Optional[str] = None


@dataclass(frozen=True)
class DependencyArc:
    """
    A dependency arc, basic or enhanced. `head_index` 0 marks the root arc.
    """
    head_index: int
    dependent_index: int
    base_type: str
    connector: Optional[str]
    raw_label: str

    @property
    def is_root(self) -> bool:
        return self.head_index == 0


@dataclass(frozen=True)
class Sentence:
    id: int
    text: str
    tokens: Tuple[Token, ...]
    arcs: Tuple[DependencyArc, ...]

    def token(self, index: int) -> Token:
        return self.tokens[index - 1]

    def __len__(self) -> int:
        return len(self.tokens)


class MeasurementFormat(str, Enum):
    SPACE_BETWEEN = "space_between"
    ATTACHED = "attached"
    HYPHENATED = "hyphenated"


@dataclass(frozen=True)
class NormalizedUnit:
    name: str
    type: str
    system: str
    factor_to_base: Decimal = Decimal(1)
    offset_to_base: Decimal = Decimal(0)


@dataclass(frozen=True)
class MeasurementSpan:
    value_token_index: int
    unit_token_indices: Tuple[int, ...]
    raw_value: str
    parsed_value: Decimal
    raw_unit_name: str
    format: MeasurementFormat
    value_offsets: Tuple[int, int]
    unit_offsets: Tuple[int, int]

    @property
    def token_indices(self) -> Tuple[int, ...]:
        """All tokens occupied by the measurement (value first)."""
        indices = [self.value_token_index]
        indices.extend(i for i in self.unit_token_indices if i != self.value_token_index)
        return tuple(indices)


@dataclass(frozen=True)
class Descriptor:
    raw_name: str
    token_index: int


@dataclass(frozen=True)
class RelatedWord:
    raw_name: str
    token_index: int
    offset_start: int
    offset_end: int
    relation_form: str
    connector: str = ""
    descriptors: Tuple[Descriptor, ...] = ()


@dataclass(frozen=True)
class Quantity:
    parsed_value: Decimal
    normalized_quantity: Decimal
    raw_value: str
    raw_unit_name: str
    unit_offsets: Tuple[int, int]
    unit_token_indices: Tuple[int, ...]
    value_offsets: Tuple[int, int]
    value_token_index: int
    normalized_unit: NormalizedUnit
    descriptors: Tuple[Descriptor, ...] = ()

    @property
    def type(self) -> str:
        return self.normalized_unit.type


@dataclass(frozen=True)
class Extraction:
    quantity: Quantity
    related: Tuple[RelatedWord, ...] = ()
    type: str = "value"


@dataclass(frozen=True)
class SentenceExtractions:
    """
    Envelope written to the JSON Lines output: one line per sentence with measurements.
    """
    sentence_num: int
    sentence: str
    measurements: Tuple[Extraction, ...]


@dataclass(frozen=True)
class LabeledMeasurement:
    number: str
    unit: str
    related: Tuple[Tuple[str, Tuple[str, ...]], ...]

    @property
    def entities(self) -> List[str]:
        return [name for name, _ in self.related]


@dataclass(frozen=True)
class LabeledSentence:
    sentence_num: int
    sentence: str
    measurements: Tuple[LabeledMeasurement, ...]
    source: Optional[str] = None


@dataclass
class ConfusionCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    def __add__(self, other: "ConfusionCounts") -> "ConfusionCounts":
        return ConfusionCounts(self.tp + other.tp, self.fp + other.fp, self.fn + other.fn)


@dataclass(frozen=True)
class Metrics:
    precision: Optional[float]
    recall: Optional[float]
    fscore: Optional[float]
    counts: ConfusionCounts


@dataclass
class MetricsReport:
    by_source: Dict[str, Metrics] = field(default_factory=dict)
    combined: Optional[Metrics] = None
