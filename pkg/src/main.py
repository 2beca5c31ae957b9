import argparse
import sys
from typing import List, Optional, Sequence

from api.annotation_service.client import AnnotationServiceClient
from app.annotation.conllu_reader import parse_conllu
from app.annotation.json_reader import dump_annotation_json, parse_annotation_json
from app.evaluation.labels import load_labels
from app.evaluation.metrics import dump_report, format_report
from app.managers.evaluation_manager import EvaluationManager
from app.managers.extraction_manager import ExtractionManager
from app.managers.stats_manager import StatsManager, parse_bin_width, quantities_of
from app.matcher.serializer import load_extractions, serialize_envelope
from app.rules.loader import dump_rules, load_rules, load_rules_file
from config.container import build_container
from config.run_config import INPUT_FORMATS, RunConfig, build_run_config
from domain.errors import ConfigError, ExtractionError
from domain.models import Sentence
from utils.console_styler import ConsoleStyler
from utils.io import read_text, write_lines, write_text
from utils.logger import setup_logger

logger = setup_logger(__name__)


def load_sentences(config: RunConfig) -> List[Sentence]:
    """Reads every input with its format; raw text goes through the annotation service."""
    sentences: List[Sentence] = []
    client = None
    for path in config.inputs:
        content = read_text(path)
        if not content.strip():
            logger.warning(f"Input {path} is empty.")
            continue
        fmt = config.format_of(path)
        if fmt == "conllu":
            sentences.extend(parse_conllu(content))
        elif fmt == "annotation-json":
            sentences.extend(parse_annotation_json(content))
        else:
            if client is None:
                client = AnnotationServiceClient(config.endpoint, timeout_ms=config.timeout_ms,
                                                 retries=config.retries)
            sentences.extend(client.annotate(content))
    ids = [s.id for s in sentences]
    if len(set(ids)) != len(ids):
        logger.warning("Input sentence ids are not unique; labels are matched to the first occurrence.")
    if config.dump_annotations:
        write_text(config.dump_annotations, dump_annotation_json(sentences, indent=2) + "\n")
    return sentences


def run_extract(config: RunConfig) -> int:
    container = build_container(config)
    sentences = load_sentences(config)
    envelopes, summary = container.resolve(ExtractionManager).run(sentences)
    write_lines(config.output_path, (serialize_envelope(e) for e in envelopes))
    ConsoleStyler.print_log("info", {"message": summary.line()})
    return 0


def run_evaluate(config: RunConfig) -> int:
    container = build_container(config)
    labels = load_labels(read_text(config.labels_path), default_source=config.source_tag)
    if config.from_extractions:
        envelopes = load_extractions(read_text(config.from_extractions))
        sentence_nums = [s.id for s in load_sentences(config)] if config.inputs else None
        report = EvaluationManager.evaluate_extractions(envelopes, labels, sentence_nums)
    else:
        report = container.resolve(EvaluationManager).evaluate(load_sentences(config), labels)
    write_text(None, format_report(report) + "\n")
    if config.report_json:
        write_text(config.report_json, dump_report(report) + "\n")
    return 0


def run_stats(config: RunConfig) -> int:
    width = parse_bin_width(config.bin_width)
    container = build_container(config)
    if config.from_extractions:
        envelopes = load_extractions(read_text(config.from_extractions))
    else:
        sentences = load_sentences(config)
        envelopes, _ = container.resolve(ExtractionManager).run(sentences)
    csv = container.resolve(StatsManager).histogram_csv(
        quantities_of(envelopes), width, dimension=config.dimension, unit=config.unit
    )
    write_text(config.output_path, csv)
    return 0


def run_rules(args: argparse.Namespace) -> int:
    if args.rules_command == "validate":
        if args.path:
            rules = load_rules(read_text(args.path), allow_unknown_deps=args.allow_unknown_deps)
        else:
            rules = load_rules_file(allow_unknown_deps=args.allow_unknown_deps)
        ConsoleStyler.print_log("info", {"symbol": "OK", "message": f"{len(rules)} rule entries are valid"})
        return 0
    rules = load_rules(read_text(args.path)) if args.path else load_rules_file()
    write_text(None, dump_rules(rules) + "\n")
    return 0


def _add_input_options(parser: argparse.ArgumentParser, inputs_required: bool = True) -> None:
    parser.add_argument("inputs", nargs="+" if inputs_required else "*", metavar="INPUT",
                        help="Annotated input files (CoNLL-U, annotation JSON or raw text); '-' for stdin")
    parser.add_argument("--format", dest="input_format", choices=INPUT_FORMATS,
                        help="Input format (default: inferred from the file suffix)")
    parser.add_argument("--endpoint", help="Annotation service URL for raw-text input")
    parser.add_argument("--timeout-ms", type=int, help="Annotation service timeout in milliseconds")
    parser.add_argument("--retries", type=int, help="Annotation service attempts")
    parser.add_argument("--dump-annotations", metavar="PATH", help="Write the parsed annotations as JSON")


def _add_pipeline_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--rules", dest="rules_path", help="Dependency pattern file")
    parser.add_argument("--allow-unknown-deps", action="store_true", default=None,
                        help="Accept dependency labels outside the known set")
    parser.add_argument("--gazetteer", dest="gazetteer_path", help="Unit gazetteer merged over the shipped table")
    parser.add_argument("--replace-gazetteer", action="store_true", default=None,
                        help="Use --gazetteer instead of the shipped table")
    parser.add_argument("--jobs", type=int, help="Worker threads (default: available cores)")
    parser.add_argument("--strict", action="store_true", default=None,
                        help="Fail on the first sentence that cannot be processed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="measurement-context",
        description="Extract measurements and their related words from dependency-parsed text",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    extract = sub.add_parser("extract", help="Write measurement extractions as JSON Lines")
    _add_input_options(extract)
    _add_pipeline_options(extract)
    extract.add_argument("-o", "--output", dest="output_path", help="Output file (default: stdout)")
    extract.add_argument("--labels", dest="labels_path", help="Labeled data for --override-spans")
    extract.add_argument("--override-spans", action="store_true", default=None,
                         help="Take measurement spans from --labels instead of the detector")
    extract.add_argument("--source-tag", help="Source tag for labels without one")

    evaluate = sub.add_parser("evaluate", help="Score extractions against labeled data")
    _add_input_options(evaluate, inputs_required=False)
    _add_pipeline_options(evaluate)
    evaluate.add_argument("--labels", dest="labels_path", required=True, help="Labeled data (JSON array or JSONL)")
    evaluate.add_argument("--end-to-end", action="store_true", default=None,
                          help="Use detector spans instead of the labeled ones")
    evaluate.add_argument("--from-extractions", metavar="JSONL", help="Score an existing extraction file")
    evaluate.add_argument("--report-json", metavar="PATH", help="Also write the report as JSON")
    evaluate.add_argument("--source-tag", help="Source tag for labels without one")

    stats = sub.add_parser("stats", help="Histogram CSV of normalized measurement values")
    _add_input_options(stats, inputs_required=False)
    _add_pipeline_options(stats)
    target = stats.add_mutually_exclusive_group(required=True)
    target.add_argument("--dimension", help="Dimension to bin (e.g. length)")
    target.add_argument("--unit", help="Bin values normalized to this unit's base")
    stats.add_argument("--bin-width", required=True, help="Bin width in the base unit")
    stats.add_argument("--from-extractions", metavar="JSONL", help="Read an existing extraction file")
    stats.add_argument("-o", "--output", dest="output_path", help="Output CSV (default: stdout)")

    rules = sub.add_parser("rules", help="Inspect dependency pattern files")
    rules_sub = rules.add_subparsers(dest="rules_command", required=True)
    validate = rules_sub.add_parser("validate", help="Validate a rule file (default: the shipped one)")
    validate.add_argument("path", nargs="?")
    validate.add_argument("--allow-unknown-deps", action="store_true")
    dump = rules_sub.add_parser("dump", help="Print a rule file in canonical form")
    dump.add_argument("path", nargs="?")
    return parser


RUNNERS = {"extract": run_extract, "evaluate": run_evaluate, "stats": run_stats}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "rules":
            return run_rules(args)
        options = {k: v for k, v in vars(args).items() if k != "rules_command"}
        if args.command == "evaluate":
            if not (args.inputs or args.from_extractions):
                raise ConfigError("evaluate needs INPUT files or --from-extractions")
            options["override_spans"] = not args.end_to_end and not args.from_extractions
        elif args.command == "stats" and not (args.inputs or args.from_extractions):
            raise ConfigError("stats needs INPUT files or --from-extractions")
        config = build_run_config(**options)
        return RUNNERS[args.command](config)
    except ExtractionError as e:
        ConsoleStyler.print_log("error", {"symbol": "ERROR", "message": str(e)})
        return 1


if __name__ == "__main__":
    sys.exit(main())
