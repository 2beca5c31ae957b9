import random
from decimal import Decimal

import pytest

from app.annotation.sentence_builder import make_arc
from app.detector.measurement_detector import detect_measurements
from app.graph.sentence_graph import build_graph
from app.matcher.context_matcher import ContextMatcher, extract_descriptors, find_candidates
from app.rules.loader import rules_from_dict
from app.rules.rule_set import Accept, RuleSet, VerbExpansion, lookup, match_pos
from domain.models import Descriptor, MeasurementFormat, MeasurementSpan, Sentence, Token

LABELS = ["nsubj", "nsubjpass", "dobj", "amod", "compound", "nmod", "nmod:of", "nmod:in", "conj", "conj:and",
          "xcomp", "ccomp", "acl", "appos", "advmod", "nummod", "case", "det"]
POS = ["NN", "NNS", "NNP", "VB", "VBD", "VBZ", "VBN", "JJ", "RB", "IN", "DT"]
UNITS = ["m", "km", "%", "nm", "Hz", "kg"]


CHAIN_SENTENCE = (
    [("Alice", "NNP"), ("ran", "VBD"), ("and", "CC"), ("Bob", "NNP"), ("swam", "VBD"), ("for", "IN"),
     ("10", "CD"), ("m", "NN")],
    [(2, 1, "nsubj"), (0, 2, "root"), (2, 3, "cc"), (2, 5, "conj"), (2, 5, "conj:and"), (5, 4, "nsubj"),
     (8, 6, "case"), (8, 7, "nummod"), (5, 8, "nmod"), (5, 8, "nmod:for")],
)


def random_sentence(rng):
    """Random multigraph over 2-30 tokens with a measurement at a random position."""
    n = rng.randint(2, 30)
    value = rng.randint(1, n - 1)
    tokens = []
    for i in range(1, n + 1):
        if i == value:
            word, pos = str(rng.randint(1, 999)), "CD"
        elif i == value + 1:
            word, pos = rng.choice(UNITS), "NN"
        else:
            word, pos = f"w{i}", rng.choice(POS)
        start = tokens[-1].offset_end + 1 if tokens else 0
        tokens.append(Token(i, word, pos, start, start + len(word)))
    arcs = []
    for _ in range(rng.randint(0, 3 * n)):
        head, dependent = rng.randint(1, n), rng.randint(1, n)
        if head != dependent:
            arcs.append(make_arc(head, dependent, rng.choice(LABELS)))
    sentence = Sentence(1, " ".join(t.text for t in tokens), tuple(tokens), tuple(arcs))
    value_token, unit_token = tokens[value - 1], tokens[value]
    span = MeasurementSpan(
        value_token_index=value, unit_token_indices=(value + 1,), raw_value=value_token.text,
        parsed_value=Decimal(value_token.text), raw_unit_name=unit_token.text,
        format=rng.choice(list(MeasurementFormat)),
        value_offsets=(value_token.offset_start, value_token.offset_end),
        unit_offsets=(unit_token.offset_start, unit_token.offset_end),
    )
    return sentence, span


def _licensed(edge, deps):
    return edge.raw_label in deps or edge.base_type in deps


def assert_path_is_licensed(graph, span, rules, candidate):
    """Replays a candidate's edge path from a unit token through the rule set."""
    first, rest = candidate.path[0], candidate.path[1:]
    units = [u for u in span.unit_token_indices if first in graph.incident(u)]
    assert units, candidate
    node = first.other(units[0])
    assert node not in span.token_indices
    matcher = lookup(rules, first.base_type, first.connector, span.format)
    assert matcher is not None, candidate.relation_form
    action = match_pos(matcher, graph.pos[node])
    assert action is not None, candidate.relation_form
    if not rest:
        assert isinstance(action, Accept) or action.include_self
        assert node == candidate.token_index
        return
    assert isinstance(action, VerbExpansion)
    assert len(rest) <= action.max_depth
    for chain in rest[:-1]:
        assert chain in graph.incident(node) and _licensed(chain, action.chain_deps)
        node = chain.other(node)
        assert graph.pos[node].startswith("VB")
    last = rest[-1]
    assert last in graph.incident(node) and last.is_head(node) and _licensed(last, action.allowed_deps)
    assert last.other(node) == candidate.token_index
    assert graph.pos[candidate.token_index].startswith("NN")


def _verb_rules(max_depth):
    return rules_from_dict({"nmod": {"enhanced": True, "connectors": {"*": {"space_between": {"pos_equals": {
        "VBD": {"allowedDeps": ["nsubj"], "chainDeps": ["conj"], "maxDepth": max_depth},
    }}}}}})


def _extract(matcher, sentence, gazetteer):
    return matcher.extract(sentence, detect_measurements(sentence, gazetteer))


def _manual_span(sentence, value_index, unit_index):
    value, unit = sentence.token(value_index), sentence.token(unit_index)
    return MeasurementSpan(
        value_token_index=value_index, unit_token_indices=(unit_index,), raw_value=value.text,
        parsed_value=Decimal(value.text), raw_unit_name=unit.text, format=MeasurementFormat.SPACE_BETWEEN,
        value_offsets=(value.offset_start, value.offset_end), unit_offsets=(unit.offset_start, unit.offset_end),
    )


def _related(extraction):
    return [(r.raw_name, r.relation_form) for r in extraction.related]


def test_attribute_of_sentence(matcher, golden_sentences, gazetteer):
    [extraction] = _extract(matcher, golden_sentences[0], gazetteer)
    [related] = extraction.related
    assert (related.raw_name, related.token_index, related.relation_form) == ("resolution", 5, "nmod:of")
    assert (related.offset_start, related.offset_end, related.connector) == (22, 32, "")
    assert related.descriptors == (Descriptor("spatial", 4),)
    assert extraction.quantity.normalized_quantity == Decimal(10)


def test_passive_clause_reaches_the_subject(matcher, golden_sentences, gazetteer):
    [extraction] = _extract(matcher, golden_sentences[1], gazetteer)
    assert _related(extraction) == [("Samples", "amod/nmod:in/nsubjpass"), ("formalin", "amod")]
    assert extraction.related[1].descriptors == (Descriptor("buffered", 6),)
    assert extraction.related[0].descriptors == ()


def test_object_clause_reaches_the_subject(matcher, golden_sentences, gazetteer):
    [extraction] = _extract(matcher, golden_sentences[2], gazetteer)
    assert _related(extraction) == [("Landsat-8", "amod/dobj/nsubj"), ("accuracy", "amod")]
    assert extraction.related[1].descriptors == (Descriptor("classification", 4),)


def test_copular_subject_and_value_modifier(matcher, golden_sentences, gazetteer):
    [extraction] = _extract(matcher, golden_sentences[3], gazetteer)
    assert _related(extraction) == [("width", "nsubj")]
    assert extraction.related[0].descriptors == (Descriptor("swath", 2),)
    assert extraction.quantity.descriptors == (Descriptor("roughly", 5),)


def test_value_modifier_with_a_count_noun(matcher, modifier_sentences):
    sentence = modifier_sentences[1]
    [extraction] = matcher.extract(sentence, [_manual_span(sentence, 4, 5)])
    assert _related(extraction) == [("Hannibal", "dobj/nsubj")]
    assert extraction.quantity.descriptors == (Descriptor("around", 3),)
    assert extraction.quantity.normalized_unit.type == "unknown"


def test_unit_without_licensed_edges(matcher, make_sentence, gazetteer):
    sentence = make_sentence(1, [("10", "CD"), ("m", "NN")], [(2, 1, "nummod"), (0, 2, "root")])
    [extraction] = _extract(matcher, sentence, gazetteer)
    assert extraction.related == ()
    assert extraction.quantity.raw_unit_name == "m"


def test_no_spans_no_extractions(matcher, golden_sentences):
    assert matcher.extract(golden_sentences[0], []) == []


def test_empty_rule_set_finds_nothing(golden_sentences, gazetteer):
    empty = ContextMatcher(RuleSet(), gazetteer)
    for sentence in golden_sentences:
        assert all(e.related == () for e in _extract(empty, sentence, gazetteer))


@pytest.mark.parametrize("max_depth, expected", [
    (1, [("Bob", "nmod:for/nsubj", "")]),
    (2, [("Alice", "nmod:for/conj:and/nsubj", "and"), ("Bob", "nmod:for/nsubj", "")]),
])
def test_verb_expansion_depth(make_sentence, gazetteer, max_depth, expected):
    sentence = make_sentence(1, *CHAIN_SENTENCE)
    [extraction] = _extract(ContextMatcher(_verb_rules(max_depth), gazetteer), sentence, gazetteer)
    assert [(r.raw_name, r.relation_form, r.connector) for r in extraction.related] == expected


def test_chained_paths_replay_through_the_rules(make_sentence, gazetteer):
    sentence = make_sentence(1, *CHAIN_SENTENCE)
    rules = _verb_rules(2)
    graph = build_graph(sentence)
    [span] = detect_measurements(sentence, gazetteer)
    candidates = find_candidates(graph, span, rules)
    assert sorted(len(c.path) for c in candidates) == [2, 3]
    for candidate in candidates:
        assert_path_is_licensed(graph, span, rules, candidate)


def test_related_word_descriptors_skip_the_measurement(make_sentence):
    sentence = make_sentence(1, [("a", "DT"), ("10", "CD"), ("m", "NN"), ("wide", "JJ"), ("road", "NN")],
                             [(5, 1, "det"), (3, 2, "nummod"), (5, 3, "compound"), (5, 4, "amod"),
                              (0, 5, "root")])
    graph = build_graph(sentence)
    assert extract_descriptors(graph, 5, exclude={2, 3}) == [Descriptor("wide", 4)]
    assert [d.raw_name for d in extract_descriptors(graph, 5)] == ["m", "wide"]


def test_dropping_a_rule_never_adds_related_words(default_rules, golden_sentences, gazetteer):
    for dropped in default_rules.base_types():
        reduced = RuleSet(nodes={k: v for k, v in default_rules.nodes.items() if k != dropped})
        for sentence in golden_sentences:
            graph = build_graph(sentence)
            for span in detect_measurements(sentence, gazetteer):
                full = {c.token_index for c in find_candidates(graph, span, default_rules)}
                fewer = {c.token_index for c in find_candidates(graph, span, reduced)}
                assert fewer <= full


def test_extraction_is_deterministic(matcher, golden_sentences, gazetteer):
    for sentence in golden_sentences:
        spans = detect_measurements(sentence, gazetteer)
        assert matcher.extract(sentence, spans) == matcher.extract(sentence, list(reversed(spans)))


@pytest.mark.parametrize("seed", range(10))
def test_random_graphs_terminate_with_sound_results(matcher, default_rules, seed):
    rng = random.Random(seed)
    for _ in range(1000):
        sentence, span = random_sentence(rng)
        graph = build_graph(sentence)
        [extraction] = matcher.extract(sentence, [span])
        indices = [r.token_index for r in extraction.related]
        assert indices == sorted(set(indices))
        for related in extraction.related:
            assert 1 <= related.token_index <= len(sentence)
            assert related.token_index not in span.token_indices
            assert related.raw_name == sentence.token(related.token_index).text
            assert all(d.token_index not in span.token_indices for d in related.descriptors)
        candidates = find_candidates(graph, span, default_rules)
        assert [c.relation_form for c in candidates] == [r.relation_form for r in extraction.related]
        for candidate in candidates:
            assert_path_is_licensed(graph, span, default_rules, candidate)
