import random
from pathlib import Path
from typing import List, Sequence, Tuple

import pytest

from app.annotation.json_reader import parse_annotation_json
from app.annotation.sentence_builder import build_sentence, make_arc
from app.detector.unit_gazetteer import load_gazetteer
from app.matcher.context_matcher import ContextMatcher
from app.rules.loader import load_rules_file
from domain.models import LabeledMeasurement, LabeledSentence, Sentence, Token

FIXTURES = Path(__file__).parent / "fixtures"

Tagged = Sequence[Tuple[str, str]]
Dep = Tuple[int, int, str]

SUBJECTS = ["HyspIRI", "Sentinel-2", "MODIS", "AVIRIS", "Hyperion", "Landsat", "WorldView", "Terra"]
ATTRIBUTES = ["resolution", "width", "range", "length", "depth", "diameter", "thickness", "height"]
ADJECTIVES = ["spatial", "spectral", "average", "maximum", "nominal", "typical"]
MODIFIERS = ["swath", "orbit", "band", "pixel", "sample", "cloud"]
UNITS = ["m", "km", "nm", "cm", "mm", "kg", "Hz"]


def tagged_sentence(sentence_id: int, tagged: Tagged, deps: Sequence[Dep], validate: bool = True) -> Sentence:
    """
    Builds a sentence from (word, POS) pairs joined by single spaces; "." attaches to the
    previous word. `deps` are (head, dependent, label) with head 0 for the root.
    """
    text = ""
    tokens: List[Token] = []
    for index, (word, pos) in enumerate(tagged, start=1):
        if text and word != ".":
            text += " "
        start = len(text)
        text += word
        tokens.append(Token(index=index, text=word, pos=pos, offset_start=start, offset_end=len(text)))
    arcs = [make_arc(head, dependent, label) for head, dependent, label in deps]
    if validate:
        return build_sentence(sentence_id, text, tokens, arcs)
    return Sentence(id=sentence_id, text=text, tokens=tuple(tokens), arcs=tuple(arcs))


Example = Tuple[Sentence, LabeledMeasurement]


def _labeled(number: str, unit: str, entities: Sequence[str]) -> LabeledMeasurement:
    return LabeledMeasurement(number=number, unit=unit, related=tuple((e, ()) for e in entities))


def _attribute_of_sentence(sentence_id: int, rng: random.Random) -> Example:
    # "<Subj> has a <adj> <attr> of <n> <unit>."
    attr, number, unit = rng.choice(ATTRIBUTES), str(rng.randint(1, 900)), rng.choice(UNITS)
    tagged = [(rng.choice(SUBJECTS), "NNP"), ("has", "VBZ"), ("a", "DT"), (rng.choice(ADJECTIVES), "JJ"),
              (attr, "NN"), ("of", "IN"), (number, "CD"), (unit, "NN"), (".", ".")]
    deps = [(2, 1, "nsubj"), (0, 2, "root"), (5, 3, "det"), (5, 4, "amod"), (2, 5, "dobj"), (8, 6, "case"),
            (8, 7, "nummod"), (5, 8, "nmod"), (5, 8, "nmod:of"), (2, 9, "punct")]
    return tagged_sentence(sentence_id, tagged, deps), _labeled(number, unit, [attr])


def _copular_sentence(sentence_id: int, rng: random.Random) -> Example:
    # "The <mod> <attr> is <n> <unit>."
    attr, number, unit = rng.choice(ATTRIBUTES), str(rng.randint(1, 900)), rng.choice(UNITS)
    tagged = [("The", "DT"), (rng.choice(MODIFIERS), "NN"), (attr, "NN"), ("is", "VBZ"),
              (number, "CD"), (unit, "NN"), (".", ".")]
    deps = [(3, 1, "det"), (3, 2, "compound"), (6, 3, "nsubj"), (6, 4, "cop"), (6, 5, "nummod"),
            (0, 6, "root"), (6, 7, "punct")]
    return tagged_sentence(sentence_id, tagged, deps), _labeled(number, unit, [attr])


def _percent_object_sentence(sentence_id: int, rng: random.Random) -> Example:
    # "<Subj> achieved <n>% <mod> <attr>."
    subject, attr, number = rng.choice(SUBJECTS), rng.choice(ATTRIBUTES), str(rng.randint(1, 99))
    tagged = [(subject, "NNP"), ("achieved", "VBD"), (f"{number}%", "CD"),
              (rng.choice(MODIFIERS), "NN"), (attr, "NN"), (".", ".")]
    deps = [(2, 1, "nsubj"), (0, 2, "root"), (5, 3, "amod"), (5, 4, "compound"), (2, 5, "dobj"),
            (2, 6, "punct")]
    return tagged_sentence(sentence_id, tagged, deps), _labeled(number, "%", [subject, attr])


TEMPLATES = [_attribute_of_sentence, _copular_sentence, _percent_object_sentence]


def build_mini_corpus(size: int = 30, seed: int = 7) -> Tuple[List[Sentence], List[LabeledSentence]]:
    """Template sentences with the labels a correct extraction must reproduce exactly."""
    rng = random.Random(seed)
    sentences, labels = [], []
    for i in range(size):
        sentence, measurement = TEMPLATES[i % len(TEMPLATES)](i + 1, rng)
        sentences.append(sentence)
        labels.append(LabeledSentence(sentence_num=sentence.id, sentence=sentence.text,
                                      measurements=(measurement,), source=f"template{i % len(TEMPLATES)}"))
    return sentences, labels


@pytest.fixture
def make_sentence():
    return tagged_sentence


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def golden_json() -> str:
    return (FIXTURES / "golden_sentences.json").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def golden_sentences(golden_json) -> List[Sentence]:
    return parse_annotation_json(golden_json)


@pytest.fixture(scope="session")
def modifier_sentences() -> List[Sentence]:
    return parse_annotation_json((FIXTURES / "value_modifiers.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def default_rules():
    return load_rules_file()


@pytest.fixture(scope="session")
def gazetteer():
    return load_gazetteer()


@pytest.fixture(scope="session")
def matcher(default_rules, gazetteer) -> ContextMatcher:
    return ContextMatcher(default_rules, gazetteer)


@pytest.fixture(scope="session")
def mini_corpus() -> Tuple[List[Sentence], List[LabeledSentence]]:
    return build_mini_corpus()


@pytest.fixture(scope="session")
def corpus_builder():
    return build_mini_corpus
