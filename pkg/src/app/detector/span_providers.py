from typing import Dict, Iterable, List

from app.detector.measurement_detector import detect_measurements
from app.detector.override_spans import apply_override_spans
from app.detector.unit_gazetteer import UnitGazetteer
from domain.models import LabeledSentence, MeasurementSpan, Sentence


class DetectorSpanProvider:
    """Spans found by the gazetteer-backed detector."""

    def __init__(self, gazetteer: UnitGazetteer):
        self.gazetteer = gazetteer

    def spans_for(self, sentence: Sentence) -> List[MeasurementSpan]:
        return detect_measurements(sentence, self.gazetteer)


class LabelSpanProvider:
    """
    Spans taken from ground-truth labels, keyed by sentence_num == sentence id.
    Unlabeled sentences have no spans.
    """

    def __init__(self, labels: Iterable[LabeledSentence]):
        self.labels: Dict[int, LabeledSentence] = {label.sentence_num: label for label in labels}

    def spans_for(self, sentence: Sentence) -> List[MeasurementSpan]:
        label = self.labels.get(sentence.id)
        if label is None:
            return []
        return apply_override_spans(sentence, label)
