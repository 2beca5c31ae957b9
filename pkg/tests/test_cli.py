import json

import pytest

from app.rules.loader import dump_rules, load_rules_file
from main import main


@pytest.fixture
def paths(fixtures_dir):
    return {
        "json": str(fixtures_dir / "golden_sentences.json"),
        "conllu": str(fixtures_dir / "golden_sentences.conllu"),
        "labels": str(fixtures_dir / "golden_labels.jsonl"),
        "expected": (fixtures_dir / "golden_extractions.jsonl").read_text(encoding="utf-8"),
    }


@pytest.mark.parametrize("extra", [[], ["--jobs", "1"], ["--jobs", "4"]])
def test_extract_writes_the_golden_lines(paths, capsys, extra):
    assert main(["extract", paths["json"], *extra]) == 0
    out = capsys.readouterr()
    assert out.out == paths["expected"]
    assert "measurements=4" in out.err


def test_conllu_input_gives_the_same_lines(paths, capsys):
    assert main(["extract", paths["conllu"]]) == 0
    assert capsys.readouterr().out == paths["expected"]


def test_extract_to_file(paths, tmp_path):
    target = tmp_path / "out.jsonl"
    assert main(["extract", paths["json"], "-o", str(target)]) == 0
    assert target.read_text(encoding="utf-8") == paths["expected"]


def test_empty_input_writes_nothing(tmp_path, capsys):
    empty = tmp_path / "empty.json"
    empty.write_text("", encoding="utf-8")
    assert main(["extract", str(empty)]) == 0
    assert capsys.readouterr().out == ""


def test_override_spans_from_labels(paths, capsys):
    assert main(["extract", paths["json"], "--labels", paths["labels"], "--override-spans"]) == 0
    assert capsys.readouterr().out == paths["expected"]


def test_override_spans_need_labels(paths, capsys):
    assert main(["extract", paths["json"], "--override-spans"]) == 1
    assert "--labels" in capsys.readouterr().err


def test_missing_input_file(tmp_path, capsys):
    assert main(["extract", str(tmp_path / "absent.json")]) == 1
    assert "cannot read" in capsys.readouterr().err


def test_raw_text_needs_an_endpoint(tmp_path, capsys):
    text = tmp_path / "doc.txt"
    text.write_text("The swath width is 185 km.", encoding="utf-8")
    assert main(["extract", str(text), "--endpoint", ""]) == 1
    assert "endpoint" in capsys.readouterr().err


def test_usage_errors_exit_with_two():
    with pytest.raises(SystemExit) as excinfo:
        main(["extract"])
    assert excinfo.value.code == 2


def test_evaluate_prints_the_report(paths, tmp_path, capsys):
    report_path = tmp_path / "report.json"
    assert main(["evaluate", paths["json"], "--labels", paths["labels"], "--report-json", str(report_path)]) == 0
    table = capsys.readouterr().out
    assert "Combined" in table and "scientific" in table and "news" in table
    report = json.loads(report_path.read_text(encoding="utf-8"))
    assert (report["Combined"]["tp"], report["Combined"]["fp"], report["Combined"]["fn"]) == (6, 0, 1)
    assert report["news"]["precision"] == 1.0


def test_evaluate_end_to_end_matches_on_this_corpus(paths, tmp_path):
    report_path = tmp_path / "report.json"
    assert main(["evaluate", paths["json"], "--labels", paths["labels"], "--end-to-end",
                 "--report-json", str(report_path)]) == 0
    assert json.loads(report_path.read_text(encoding="utf-8"))["Combined"]["tp"] == 6


def test_evaluate_from_an_extraction_file(paths, tmp_path):
    extractions = tmp_path / "out.jsonl"
    direct, stored = tmp_path / "direct.json", tmp_path / "stored.json"
    assert main(["extract", paths["json"], "-o", str(extractions)]) == 0
    assert main(["evaluate", paths["json"], "--labels", paths["labels"], "--end-to-end",
                 "--report-json", str(direct)]) == 0
    assert main(["evaluate", "--from-extractions", str(extractions), "--labels", paths["labels"],
                 "--report-json", str(stored)]) == 0
    assert json.loads(stored.read_text(encoding="utf-8")) == json.loads(direct.read_text(encoding="utf-8"))


def test_evaluate_reports_unknown_sentence_numbers(paths, tmp_path, capsys):
    labels = tmp_path / "labels.jsonl"
    labels.write_text(json.dumps({"sentence_num": 99, "sentence": "It is 10 m wide.", "measurements": []}) + "\n",
                      encoding="utf-8")
    assert main(["evaluate", paths["json"], "--labels", str(labels)]) == 1
    assert "99" in capsys.readouterr().err


def test_evaluate_fails_on_labels_absent_from_their_sentence(paths, tmp_path, capsys):
    labels = tmp_path / "labels.jsonl"
    labels.write_text(json.dumps({"sentence_num": 1, "sentence": "HyspIRI has a spatial resolution of 10 m.",
                                  "measurements": [{"number": "99", "unit": "m", "related": []}]}) + "\n",
                      encoding="utf-8")
    report_path = tmp_path / "report.json"
    assert main(["evaluate", paths["json"], "--labels", str(labels), "--report-json", str(report_path)]) == 1
    out = capsys.readouterr()
    assert "could not be extracted: 1" in out.err
    assert out.out == "" and not report_path.exists()


def test_evaluate_needs_inputs_or_extractions(paths):
    assert main(["evaluate", "--labels", paths["labels"]]) == 1


def test_stats_histogram(paths, capsys):
    assert main(["stats", paths["json"], "--dimension", "length", "--bin-width", "1000"]) == 0
    assert capsys.readouterr().out == "bin,count\n0,1\n185000,1\n"


def test_stats_by_unit(paths, capsys):
    assert main(["stats", paths["json"], "--unit", "%", "--bin-width", "0.5"]) == 0
    assert capsys.readouterr().out == "bin,count\n0,1\n0.5,1\n"


@pytest.mark.parametrize("options", [["--dimension", "luminosity", "--bin-width", "1"],
                                     ["--dimension", "length", "--bin-width", "0"]])
def test_stats_errors(paths, capsys, options):
    assert main(["stats", paths["json"], *options]) == 1
    assert capsys.readouterr().out == ""


def test_rules_validate(capsys):
    assert main(["rules", "validate"]) == 0
    assert "9 rule entries are valid" in capsys.readouterr().err


def test_rules_validate_reports_the_path(tmp_path, capsys):
    bad = tmp_path / "rules.json"
    bad.write_text(json.dumps({"nsubj": {"formats": {"sideways": {"pos_in": {"NN": None}}}}}), encoding="utf-8")
    assert main(["rules", "validate", str(bad)]) == 1
    assert "$.nsubj.formats.sideways" in capsys.readouterr().err


def test_rules_dump_is_canonical(capsys):
    assert main(["rules", "dump"]) == 0
    assert capsys.readouterr().out == dump_rules(load_rules_file()) + "\n"


def test_custom_rules_change_the_output(paths, tmp_path, capsys):
    rules = tmp_path / "rules.json"
    rules.write_text("{}", encoding="utf-8")
    assert main(["extract", paths["json"], "--rules", str(rules)]) == 0
    lines = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert len(lines) == 4
    assert all(m["related"] == [] for line in lines for m in line["measurements"])
