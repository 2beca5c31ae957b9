from punq import Container

from app.detector.span_providers import DetectorSpanProvider, LabelSpanProvider
from app.detector.unit_gazetteer import UnitGazetteer, load_gazetteer
from app.evaluation.labels import load_labels
from app.managers.evaluation_manager import EvaluationManager
from app.managers.extraction_manager import ExtractionManager
from app.managers.stats_manager import StatsManager
from app.matcher.context_matcher import ContextMatcher
from app.rules.loader import load_rules_file
from app.rules.rule_set import RuleSet
from config.run_config import RunConfig
from domain.ports import ContextExtractor, SpanProvider
from utils.io import read_text


def build_container(config: RunConfig) -> Container:
    """
    Wires the pipeline for one run: resources loaded from the config, ports bound to
    their adapters. Loading errors surface here, before any sentence is processed.
    """
    container = Container()
    container.register(RunConfig, instance=config)

    rules = load_rules_file(config.effective_rules_path, allow_unknown_deps=config.allow_unknown_deps)
    gazetteer = load_gazetteer(config.effective_gazetteer_path, extend_default=not config.replace_gazetteer)
    container.register(RuleSet, instance=rules)
    container.register(UnitGazetteer, instance=gazetteer)

    matcher = ContextMatcher(rules, gazetteer)
    container.register(ContextExtractor, instance=matcher)

    if config.override_spans:
        labels = load_labels(read_text(config.labels_path), default_source=config.source_tag)
        container.register(SpanProvider, instance=LabelSpanProvider(labels))
    else:
        container.register(SpanProvider, instance=DetectorSpanProvider(gazetteer))

    container.register(ExtractionManager, instance=ExtractionManager(
        container.resolve(SpanProvider), matcher, max_workers=config.jobs, strict=config.strict,
    ))
    container.register(EvaluationManager, instance=EvaluationManager(container.resolve(ExtractionManager)))
    container.register(StatsManager, instance=StatsManager(gazetteer))
    return container
