import json

import pytest

from folkgraph.detector import Detector, DetectorError, StanceJudgment
from folkgraph.rdfio import to_ntriples
from folkgraph.terms import Pattern, Triple, lit
from folkgraph.vocab import (
    ACTIVATES,
    ANCHOR,
    PREFIXES,
    SENTENCE_NODE,
    SPAN_START,
    STANCE_ROLE,
    STANCE_TARGET,
    TRIGGERS,
)
from kb import pipeline_from_turtle, t

LEXICAL = """
lex:dishonest-adjective a fg:LexicalEntry ; fg:lemma "dishonest" ; fg:pos "adjective" ;
    fg:sense wn:dishonest-adjective-1 .
lex:national-adjective a fg:LexicalEntry ; fg:lemma "national" ; fg:pos "adjective" ;
    fg:sense wn:national-adjective-1 .
lex:dangerous-adjective a fg:LexicalEntry ; fg:lemma "dangerous" ; fg:pos "adjective" ;
    fg:sense wn:dangerous-adjective-1 .
lex:course-noun a fg:LexicalEntry ; fg:lemma "course" ; fg:pos "noun" ;
    fg:sense wn:course-noun-1, wn:course-noun-2 .
lex:act-of-dishonesty a fg:LexicalEntry ; fg:lemma "act of dishonesty" ; fg:pos "multiword" ;
    fg:sense wn:act-of-dishonesty-1 .
lex:steal-verb a fg:LexicalEntry ; fg:lemma "steal" ; fg:pos "verb" ;
    fg:sense wn:steal-verb-1 ; fg:form "stole", "stolen", "steals", "stealing" .
lex:expose-verb a fg:LexicalEntry ; fg:lemma "expose" ; fg:pos "verb" ;
    fg:sense wn:expose-verb-1 ; fg:form "exposed", "exposes", "exposing" .
lex:cheat-verb a fg:LexicalEntry ; fg:lemma "cheat" ; fg:pos "verb" ;
    fg:sense wn:cheat-verb-1 ; fg:form "cheated", "cheats", "cheating" .

wn:dishonest-adjective-1 fg:evokes fs:Candidness .
wn:national-adjective-1 fg:evokes fs:PoliticalLocales .
wn:dangerous-adjective-1 fg:evokes fs:RiskySituation .
wn:course-noun-1 fg:evokes fs:Education .
wn:act-of-dishonesty-1 fg:evokes fs:Law .
wn:steal-verb-1 fg:senseKey vn:Steal_10050000 .
wn:expose-verb-1 fg:senseKey vn:Expose_48012000 .
wn:cheat-verb-1 fg:senseKey vn:Cheat_10051000 .
vn:Expose_48012000 fg:evokes fs:RevealSecret .

vn:Steal_10050000 fg:affectRole "Agent" ; fg:affectPolarity "negative" .
vn:Cheat_10051000 fg:affectRole "Agent" ; fg:affectPolarity "negative" .

fs:Candidness a fg:Frame .
fs:PoliticalLocales a fg:Frame .
fs:RiskySituation a fg:Frame .
fs:Education a fg:Frame .
fs:Law a fg:Frame .
fs:RevealSecret a fg:Frame .
"""

TRIGGERS_TTL = """
fs:Candidness fg:triggers mft:Loyalty .
wn:dishonest-adjective-1 fg:triggers mft:Loyalty .
wn:national-adjective-1 fg:triggers mft:Loyalty .
fs:RevealSecret fg:triggers mft:Betrayal .
vn:Expose_48012000 fg:triggers mft:Betrayal .
fs:Law fg:triggers folk:Rigor .
wn:act-of-dishonesty-1 fg:triggers folk:Rigor .
wn:course-noun-1 fg:triggers folk:Learning .
fs:Education fg:triggers folk:Learning .
wn:dangerous-adjective-1 fg:triggers folk:Risk .
fs:RiskySituation fg:triggers folk:Risk .
"""

LEAK_SENTENCE = (
    "And however flawed or dishonest Macron may be.....it is a far greater act of "
    "dishonesty to steal his data and expose it, hoping to change the course of a "
    "national election for the purpose of an outside group. That is far far more "
    "dangerous than voting for one flawed man."
)


@pytest.fixture(scope="module")
def detector():
    store, lexicon = pipeline_from_turtle(LEXICAL, {"g:triggers-test": TRIGGERS_TTL})
    return Detector(store, lexicon)


def test_single_adjective_sentence(detector):
    graph = detector.analyze("That is dangerous.", sentence_id="d1")
    assert [n.anchor for n in graph.nodes] == ["dangerous"]
    node = graph.nodes[0]
    assert node.span == (8, 17)
    assert node.sense == t("wn:dangerous-adjective-1")
    assert node.frames == (t("fs:RiskySituation"),)
    result = detector.detect_values(graph)
    assert result.values == [t("folk:Risk")]


def test_multiword_segment_is_one_node(detector):
    graph = detector.analyze("act of dishonesty")
    assert len(graph.nodes) == 1
    node = graph.nodes[0]
    assert node.pos == "multiword"
    assert node.span == (0, 17)
    assert node.frames == (t("fs:Law"),)
    assert detector.detect_values(graph).values == [t("folk:Rigor")]


def test_multiword_spans_do_not_overlap(detector):
    graph = detector.analyze("act of dishonesty after act of dishonesty")
    spans = [n.span for n in graph.nodes]
    assert spans == [(0, 17), (24, 41)]


def test_empty_text_rejected(detector):
    with pytest.raises(DetectorError, match="empty"):
        detector.analyze("")


def test_unknown_mode_rejected(detector):
    with pytest.raises(DetectorError, match="mode"):
        detector.analyze("anything", mode="bestSense")


def test_unlexicalized_text_flags_no_graph(detector):
    graph = detector.analyze("imho brb lol")
    assert graph.no_graph
    result = detector.detect_values(graph)
    assert result.values == []
    summary = result.summary(PREFIXES)
    assert summary["noGraph"] is True
    assert summary["values"] == []


def test_inflected_form_resolves_to_lemma(detector):
    graph = detector.analyze("He stole the data.")
    assert [(n.lemma, n.pos) for n in graph.nodes] == [("steal", "verb")]
    assert graph.nodes[0].verb_classes == (t("vn:Steal_10050000"),)


def test_worked_example_values_and_paths(detector):
    result = detector.run(LEAK_SENTENCE, sentence_id="357")
    assert [n.anchor for n in result.graph.nodes] == [
        "dishonest", "act of dishonesty", "steal", "expose", "course", "national", "dangerous",
    ]
    assert result.values == [
        t("folk:Learning"), t("folk:Rigor"), t("folk:Risk"), t("mft:Betrayal"), t("mft:Loyalty"),
    ]
    chains = {path.chain for path in result.paths}
    assert (t("wn:dishonest-adjective-1"), "evokes", t("fs:Candidness"), "triggers", t("mft:Loyalty")) in chains
    assert (t("wn:national-adjective-1"), "triggers", t("mft:Loyalty")) in chains
    assert (t("vn:Expose_48012000"), "evokes", t("fs:RevealSecret"), "triggers", t("mft:Betrayal")) in chains
    assert (t("wn:act-of-dishonesty-1"), "evokes", t("fs:Law"), "triggers", t("folk:Rigor")) in chains
    assert (t("wn:course-noun-1"), "triggers", t("folk:Learning")) in chains
    assert (t("wn:dangerous-adjective-1"), "triggers", t("folk:Risk")) in chains
    assert (t("fs:RiskySituation"), "triggers", t("folk:Risk")) in chains


def test_worked_example_stance(detector):
    result = detector.run(LEAK_SENTENCE, sentence_id="357")
    steal_index = next(i for i, n in enumerate(result.graph.nodes) if n.lemma == "steal")
    target_index = next(i for i, n in enumerate(result.graph.nodes) if n.pos == "multiword")
    assert result.stances == [
        StanceJudgment(t("vn:Steal_10050000"), "Agent", "negative", steal_index, target_index)
    ]


def test_every_chain_link_is_a_store_triple(detector):
    result = detector.run(LEAK_SENTENCE, sentence_id="357")
    assert result.paths
    for path in result.paths:
        for link in path.links():
            assert detector.store.ask([Pattern(link.s, link.p, link.o)]), link


def test_result_triples_cover_annotations_and_justifications(detector):
    result = detector.run(LEAK_SENTENCE, sentence_id="357")
    triples = result.triples()
    n0 = result.graph.nodes[0].node
    assert Triple(n0, ANCHOR, lit("dishonest")) in triples
    assert Triple(n0, ACTIVATES, t("mft:Loyalty")) in triples
    assert Triple(t("fs:Candidness"), TRIGGERS, t("mft:Loyalty")) in triples
    steal_node = next(n for n in result.graph.nodes if n.lemma == "steal")
    mw_node = next(n for n in result.graph.nodes if n.pos == "multiword")
    assert Triple(steal_node.node, STANCE_ROLE, lit("Agent")) in triples
    assert Triple(steal_node.node, STANCE_TARGET, mw_node.node) in triples
    starts = {tr for tr in triples if tr.p == SPAN_START}
    assert len(starts) == len(result.graph.nodes)


def test_two_stance_verbs_are_span_ordered(detector):
    graph = detector.analyze("The course made him cheat and steal.", sentence_id="s2")
    judgments = detector.stance_query(graph)
    course = next(i for i, n in enumerate(graph.nodes) if n.lemma == "course")
    cheat = next(i for i, n in enumerate(graph.nodes) if n.lemma == "cheat")
    steal = next(i for i, n in enumerate(graph.nodes) if n.lemma == "steal")
    assert judgments == [
        StanceJudgment(t("vn:Cheat_10051000"), "Agent", "negative", cheat, course),
        StanceJudgment(t("vn:Steal_10050000"), "Agent", "negative", steal, course),
    ]


def test_stance_skipped_without_preceding_nominal(detector):
    graph = detector.analyze("Steal the thing.")
    assert detector.stance_query(graph) == []


def test_no_verbs_means_no_stances(detector):
    graph = detector.analyze("That is dangerous.")
    assert detector.stance_query(graph) == []


def test_all_senses_is_superset_of_first_sense(detector):
    for text in (LEAK_SENTENCE, "the course is dangerous", "act of dishonesty"):
        first = detector.detect_values(detector.analyze(text, mode="firstSense"))
        every = detector.detect_values(detector.analyze(text, mode="allSenses"))
        assert set(first.values) <= set(every.values)


def test_first_sense_one_node_per_unit(detector):
    graph = detector.analyze("course course", mode="firstSense")
    assert len(graph.nodes) == 2
    graph_all = detector.analyze("course course", mode="allSenses")
    assert len(graph_all.nodes) == 4
    assert {n.sense for n in graph_all.nodes} == {t("wn:course-noun-1"), t("wn:course-noun-2")}


def test_trigger_monotonicity():
    extra = TRIGGERS_TTL + "\nwn:course-noun-2 fg:triggers folk:Wayfinding .\n"
    base_store, base_lex = pipeline_from_turtle(LEXICAL, {"g:triggers-test": TRIGGERS_TTL})
    wide_store, wide_lex = pipeline_from_turtle(LEXICAL, {"g:triggers-test": extra})
    base = Detector(base_store, base_lex, mode="allSenses")
    wide = Detector(wide_store, wide_lex, mode="allSenses")
    for text in (LEAK_SENTENCE, "the course is dangerous", "imho"):
        before = set(base.run(text).values)
        after = set(wide.run(text).values)
        assert before <= after


def test_detection_is_deterministic(detector):
    first = detector.run(LEAK_SENTENCE, sentence_id="357")
    second = detector.run(LEAK_SENTENCE, sentence_id="357")
    assert first.summary_line(PREFIXES) == second.summary_line(PREFIXES)
    assert to_ntriples(first.triples()) == to_ntriples(second.triples())


def test_no_trigger_graphs_means_no_activations():
    store, lexicon = pipeline_from_turtle(LEXICAL)
    bare = Detector(store, lexicon)
    result = bare.run(LEAK_SENTENCE, sentence_id="357")
    assert result.values == []
    assert not result.graph.no_graph


def test_summary_is_compact_sorted_json(detector):
    result = detector.run("That is dangerous.", sentence_id="d1")
    line = result.summary_line(PREFIXES)
    payload = json.loads(line)
    assert list(payload) == sorted(payload)
    assert payload["id"] == "d1"
    assert payload["values"] == ["folk:Risk"]
    assert payload["noGraph"] is False
    assert {"node": 0, "chain": ["wn:dangerous-adjective-1", "triggers", "folk:Risk"]} in payload["paths"]


def test_sentence_node_triples_shape(detector):
    graph = detector.analyze("That is dangerous.", sentence_id="d1")
    triples = graph.base_triples()
    node = graph.nodes[0].node
    assert node.value.endswith("d1/n0")
    assert Triple(node, t("rdf:type"), SENTENCE_NODE) in triples
