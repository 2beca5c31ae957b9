from typing import List, Protocol

from domain.models import Extraction, MeasurementSpan, Sentence


class AnnotationSource(Protocol):
    """
    Port for turning raw text into annotated sentences (an external parser service).
    """
    def annotate(self, text: str) -> List[Sentence]: ...


class SpanProvider(Protocol):
    """
    Port yielding the measurement spans of a sentence (detector or ground-truth labels).
    """
    def spans_for(self, sentence: Sentence) -> List[MeasurementSpan]: ...


class ContextExtractor(Protocol):
    """
    Port for attaching related words and descriptors to measurement spans.
    """
    def extract(self, sentence: Sentence, spans: List[MeasurementSpan]) -> List[Extraction]: ...
