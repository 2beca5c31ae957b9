import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from domain.errors import ExtractionError
from domain.models import Sentence, SentenceExtractions
from domain.ports import ContextExtractor, SpanProvider
from utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class CorpusSummary:
    """Corpus-level counts reported after an extraction run."""
    sentences: int = 0
    sentences_with_measurements: int = 0
    measurements: int = 0
    related_words: int = 0
    failed: int = 0
    failed_ids: Tuple[int, ...] = ()

    def line(self) -> str:
        return (f"sentences={self.sentences} measurements={self.measurements} "
                f"related={self.related_words} sentences_with_measurements={self.sentences_with_measurements} "
                f"failed={self.failed}")


class ExtractionManager:
    """
    Runs span detection and context matching over a corpus, one task per sentence.
    """

    def __init__(
        self,
        span_provider: SpanProvider,
        extractor: ContextExtractor,
        max_workers: Optional[int] = None,
        strict: bool = False,
    ):
        """
        :param span_provider: Source of measurement spans (detector or labels).
        :param extractor: Context matcher applied to each sentence's spans.
        :param max_workers: Thread pool size; None uses the number of available cores.
        :param strict: Re-raise per-sentence failures instead of logging and skipping them.
        """
        self.span_provider = span_provider
        self.extractor = extractor
        self.max_workers = max_workers or os.cpu_count() or 1
        self.strict = strict

    def extract_sentence(self, sentence: Sentence) -> SentenceExtractions:
        spans = self.span_provider.spans_for(sentence)
        measurements = self.extractor.extract(sentence, spans)
        return SentenceExtractions(sentence_num=sentence.id, sentence=sentence.text,
                                   measurements=tuple(measurements))

    def _safe_extract(self, sentence: Sentence) -> Tuple[Optional[SentenceExtractions], Optional[ExtractionError]]:
        try:
            return self.extract_sentence(sentence), None
        except ExtractionError as e:
            return None, e

    def run(self, sentences: Sequence[Sentence]) -> Tuple[List[SentenceExtractions], CorpusSummary]:
        """
        Extracts every sentence and returns the envelopes of sentences with measurements,
        in input order whatever the degree of parallelism.

        :raises ExtractionError: the first per-sentence failure, in strict mode.
        """
        if self.max_workers == 1 or len(sentences) < 2:
            results = [self._safe_extract(s) for s in sentences]
        else:
            with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
                results = list(pool.map(self._safe_extract, sentences))

        envelopes: List[SentenceExtractions] = []
        failed_ids: List[int] = []
        for sentence, (envelope, error) in zip(sentences, results):
            if error is not None:
                if self.strict:
                    raise error
                failed_ids.append(sentence.id)
                logger.warning(f"Skipping sentence {sentence.id}: {error}")
                continue
            if envelope.measurements:
                envelopes.append(envelope)

        summary = summarize(envelopes, sentence_count=len(sentences), failed_ids=failed_ids)
        logger.info(f"Extraction finished: {summary.line()}")
        return envelopes, summary


def summarize(
    envelopes: Iterable[SentenceExtractions], sentence_count: int, failed_ids: Sequence[int] = ()
) -> CorpusSummary:
    envelopes = list(envelopes)
    return CorpusSummary(
        sentences=sentence_count,
        sentences_with_measurements=sum(1 for e in envelopes if e.measurements),
        measurements=sum(len(e.measurements) for e in envelopes),
        related_words=sum(len(m.related) for e in envelopes for m in e.measurements),
        failed=len(failed_ids),
        failed_ids=tuple(failed_ids),
    )
