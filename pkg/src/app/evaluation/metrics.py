import json
from typing import Any, Dict, Iterable, Optional, Tuple

from prettytable import PrettyTable

from domain.models import ConfusionCounts, Metrics, MetricsReport

COMBINED = "Combined"


def _ratio(numerator: int, denominator: int) -> Optional[float]:
    return numerator / denominator if denominator else None


def compute_metrics(counts: ConfusionCounts) -> Metrics:
    """
    Precision, recall and their harmonic mean. A ratio whose denominator is zero is None,
    never 0.0.
    """
    precision = _ratio(counts.tp, counts.tp + counts.fp)
    recall = _ratio(counts.tp, counts.tp + counts.fn)
    fscore = None
    if precision is not None and recall is not None and precision + recall > 0:
        fscore = 2 * precision * recall / (precision + recall)
    return Metrics(precision=precision, recall=recall, fscore=fscore,
                   counts=ConfusionCounts(counts.tp, counts.fp, counts.fn))


def aggregate(counts: Iterable[Tuple[Optional[str], ConfusionCounts]]) -> MetricsReport:
    """Sums counts per source tag and overall. Untagged counts only enter the combined total."""
    per_source: Dict[str, ConfusionCounts] = {}
    total = ConfusionCounts()
    for source, item in counts:
        total = total + item
        if source:
            per_source[source] = per_source.get(source, ConfusionCounts()) + item
    return MetricsReport(
        by_source={source: compute_metrics(per_source[source]) for source in sorted(per_source)},
        combined=compute_metrics(total),
    )


def _percent(value: Optional[float]) -> str:
    return "n/a" if value is None else f"{value * 100:.1f}%"


def _columns(report: MetricsReport) -> Dict[str, Metrics]:
    columns = dict(report.by_source)
    columns[COMBINED] = report.combined or compute_metrics(ConfusionCounts())
    return columns


def format_report(report: MetricsReport) -> str:
    columns = _columns(report)
    table = PrettyTable(["Metric"] + list(columns))
    table.align["Metric"] = "l"
    for label, attr in (("TP", "tp"), ("FP", "fp"), ("FN", "fn")):
        table.add_row([label] + [getattr(m.counts, attr) for m in columns.values()])
    for label, attr in (("Precision", "precision"), ("Recall", "recall"), ("F-score", "fscore")):
        table.add_row([label] + [_percent(getattr(m, attr)) for m in columns.values()])
    return table.get_string()


def _metrics_to_dict(metrics: Metrics) -> Dict[str, Any]:
    return {
        "tp": metrics.counts.tp,
        "fp": metrics.counts.fp,
        "fn": metrics.counts.fn,
        "precision": metrics.precision,
        "recall": metrics.recall,
        "fscore": metrics.fscore,
    }


def report_to_dict(report: MetricsReport) -> Dict[str, Any]:
    return {name: _metrics_to_dict(metrics) for name, metrics in _columns(report).items()}


def dump_report(report: MetricsReport, indent: Optional[int] = 2) -> str:
    return json.dumps(report_to_dict(report), indent=indent)
