# src/app/managers/__init__.py

from .extraction_manager import CorpusSummary, ExtractionManager, summarize
from .evaluation_manager import EvaluationManager, score_extractions
from .stats_manager import StatsManager
