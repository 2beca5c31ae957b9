from typing import Dict, Iterable, Optional, Sequence

from app.evaluation.metrics import aggregate
from app.evaluation.scorer import score_measurements
from app.managers.extraction_manager import ExtractionManager
from domain.errors import AlignmentError
from domain.models import LabeledSentence, MetricsReport, Sentence, SentenceExtractions
from utils.logger import setup_logger

logger = setup_logger(__name__)


def _check_coverage(labels: Sequence[LabeledSentence], available: Iterable[int]) -> None:
    known = set(available)
    missing = sorted(label.sentence_num for label in labels if label.sentence_num not in known)
    if missing:
        raise AlignmentError(f"labels reference sentence_num values absent from the input: "
                             f"{', '.join(str(n) for n in missing)}")


def score_extractions(
    envelopes: Iterable[SentenceExtractions], labels: Sequence[LabeledSentence]
) -> MetricsReport:
    """
    Scores extraction envelopes against labels; a labeled sentence without an envelope
    contributes only false negatives.
    """
    by_num: Dict[int, SentenceExtractions] = {e.sentence_num: e for e in envelopes}
    counts = []
    for label in labels:
        envelope = by_num.get(label.sentence_num)
        measurements = envelope.measurements if envelope is not None else ()
        counts.append((label.source, score_measurements(measurements, label)))
    report = aggregate(counts)
    combined = report.combined.counts
    logger.info(f"Scored {len(labels)} labeled sentences: tp={combined.tp} fp={combined.fp} fn={combined.fn}")
    return report


class EvaluationManager:
    """
    Extracts the labeled sentences of a corpus and scores the result.
    """

    def __init__(self, extraction_manager: ExtractionManager):
        self.extraction_manager = extraction_manager

    def evaluate(self, sentences: Sequence[Sentence], labels: Sequence[LabeledSentence]) -> MetricsReport:
        """
        :raises AlignmentError: when labels name sentences missing from the input, or when
            a labeled sentence cannot be extracted (e.g. a label absent from its text).
        """
        _check_coverage(labels, (s.id for s in sentences))
        wanted = {label.sentence_num for label in labels}
        envelopes, summary = self.extraction_manager.run([s for s in sentences if s.id in wanted])
        if summary.failed_ids:
            raise AlignmentError(f"labeled sentences could not be extracted: "
                                 f"{', '.join(str(n) for n in summary.failed_ids)}")
        return score_extractions(envelopes, labels)

    @staticmethod
    def evaluate_extractions(
        envelopes: Sequence[SentenceExtractions],
        labels: Sequence[LabeledSentence],
        sentence_nums: Optional[Iterable[int]] = None,
    ) -> MetricsReport:
        """
        Scores a previously written extraction file. `sentence_nums` lists every sentence
        the file was produced from (sentences without measurements have no envelope).
        """
        if sentence_nums is not None:
            _check_coverage(labels, sentence_nums)
        return score_extractions(envelopes, labels)

