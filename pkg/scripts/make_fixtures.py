#!/usr/bin/env python3
"""Regenerate the fixtures/ tree: knowledge base, plans, values, corpus.

Everything in fixtures/ is synthetic but arithmetically pinned. The corpus
roster is built so the evaluation tables land on fixed, hand-checked totals;
this script re-derives those totals with independent counting before writing
a single file, then runs the real pipeline end to end in a scratch workspace
and verifies that every sentence detects exactly the way the roster intends.

Run from the repository root after any change to the roster or the KB:

    python3 scripts/make_fixtures.py
"""

from __future__ import annotations

import csv
import json
import os
import sys
import tempfile
from collections import Counter
from dataclasses import dataclass
from itertools import cycle
from pathlib import Path

from folkgraph import cli
from folkgraph.detector import Detector
from folkgraph.lexicon import Lexicon
from folkgraph.manifest import WORKSPACE_ENV, load_trigger_graphs, load_workspace
from folkgraph.rdfio import parse_turtle
from folkgraph.store import TripleStore
from folkgraph.values import ValueCandidate, dedupe_candidates, load_merge_overrides
from folkgraph.vocab import NAMESPACES, PREFIXES

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"

ANNOTATORS = ("A00", "A01", "A02", "A03", "A04")

# Target table cells: (Tot, Tot-NC, Agree, Agree+TM, Agree+TM-NC) per annotator,
# then the coverage row (total, graphs, value rows, TM rows, NM rows, detected)
# and the detected-without-value-label overlap.
TABLE1 = {
    "A00": (157, 63, 52, 62, 34),
    "A01": (137, 136, 53, 60, 60),
    "A02": (185, 180, 65, 75, 75),
    "A03": (302, 296, 122, 130, 130),
    "A04": (163, 163, 6, 63, 63),
}
TABLE2 = (1000, 944, 228, 153, 563, 855)
OVERLAP = 635

TM_LABEL = "Thin Morality"
NM_LABEL = "Non-Moral"
VALUE_LABELS = [
    "Care", "Harm", "Fairness", "Cheating", "Loyalty", "Betrayal",
    "Authority", "Subversion", "Purity", "Degradation", "Liberty", "Oppression",
    "Risk", "Rigor", "Learning",
]
CONFIDENT = "Confident"
NOT_CONFIDENT = "Not Confident"

# Surface forms driving detection status. Trigger words light up a value once
# the expansion plans have run; graph words are lexicalized but trigger-free.
TRIGGER_WORDS = [
    "dangerous", "dishonest", "expose", "course", "gamble",
    "national", "risk", "act of dishonesty", "venture", "exposed",
]
GRAPH_WORDS = ["walk", "steal", "crowd", "cheat", "stole"]
FILLER_WORDS = ["people", "consider", "the", "again", "they", "quietly", "qux", "corge", "waldo"]

WORKED_EXAMPLE = (
    "And however flawed or dishonest Macron may be.....it is a far greater act "
    "of dishonesty to steal his data and expose it, hoping to change the course "
    "of a national election for the purpose of an outside group. That is far far "
    "more dangerous than voting for one flawed man."
)
WORKED_EXAMPLE_VALUES = ["folk:Learning", "folk:Rigor", "folk:Risk", "mft:Betrayal", "mft:Loyalty"]


# -- knowledge base ---------------------------------------------------------------

PREFIX_HEADER = "".join(f"@prefix {p}: <{ns}> .\n" for p, ns in NAMESPACES.items())

LEXICON_CORE = """
# Vocabulary for the worked detection example and the evaluation corpus.

lex:dishonest-adjective a fg:LexicalEntry ; fg:lemma "dishonest" ; fg:pos "adjective" ;
    fg:sense wn:dishonest-adjective-1 .
lex:national-adjective a fg:LexicalEntry ; fg:lemma "national" ; fg:pos "adjective" ;
    fg:sense wn:national-adjective-1 .
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
lex:walk-verb a fg:LexicalEntry ; fg:lemma "walk" ; fg:pos "verb" ;
    fg:sense wn:walk-verb-1 ; fg:form "walked", "walks", "walking" .
lex:crowd-noun a fg:LexicalEntry ; fg:lemma "crowd" ; fg:pos "noun" ;
    fg:sense wn:crowd-noun-1 .

wn:dishonest-adjective-1 fg:evokes fs:Candidness .
wn:national-adjective-1 fg:evokes fs:PoliticalLocales .
wn:course-noun-1 fg:evokes fs:Education .
wn:course-noun-2 fg:evokes fs:Roadways .
wn:act-of-dishonesty-1 fg:evokes fs:Law .
wn:steal-verb-1 fg:evokes fs:Theft ; fg:senseKey vn:Steal_10050000 .
wn:expose-verb-1 fg:evokes fs:RevealSecret ; fg:senseKey vn:Expose_48012000 .
wn:cheat-verb-1 fg:senseKey vn:Cheat_10051000 .
wn:walk-verb-1 fg:evokes fs:Motion .
wn:crowd-noun-1 fg:evokes fs:Aggregate .
vn:Expose_48012000 fg:evokes fs:RevealSecret .

vn:Steal_10050000 fg:affectRole "Agent" ; fg:affectPolarity "negative" .
vn:Cheat_10051000 fg:affectRole "Agent" ; fg:affectPolarity "negative" .

fs:Candidness a fg:Frame .
fs:PoliticalLocales a fg:Frame .
fs:Education a fg:Frame .
fs:Roadways a fg:Frame .
fs:Law a fg:Frame .
fs:Theft a fg:Frame .
fs:RevealSecret a fg:Frame .
fs:Motion a fg:Frame .
fs:Aggregate a fg:Frame .

# The risk cluster: seeds, evoked frames, alignments, concept neighborhood.

lex:risk-noun a fg:LexicalEntry ; fg:lemma "risk" ; fg:pos "noun" ;
    fg:sense wn:risk-noun-1, wn:risk-noun-2 ; fg:conceptAnchor cn:risk .
lex:risk-verb a fg:LexicalEntry ; fg:lemma "risk" ; fg:pos "verb" ;
    fg:sense wn:risk-verb-1, wn:risk-verb-2 .
lex:gamble-verb a fg:LexicalEntry ; fg:lemma "gamble" ; fg:pos "verb" ;
    fg:sense wn:gamble-verb-1 .
lex:venture-verb a fg:LexicalEntry ; fg:lemma "venture" ; fg:pos "verb" ;
    fg:sense wn:venture-verb-3 .
lex:dangerous-adjective a fg:LexicalEntry ; fg:lemma "dangerous" ; fg:pos "adjective" ;
    fg:sense wn:dangerous-adjective-1 .

wn:risk-noun-1 fg:evokes fs:RiskySituation .
wn:risk-noun-2 fg:evokes fs:BeingAtRisk .
wn:risk-verb-1 fg:evokes fs:Daring, fs:Endangering .
wn:risk-verb-2 fg:evokes fs:RunRisk, fs:RiskySituation ; fg:senseKey vn:Risk_94000000 .
wn:gamble-verb-1 fg:evokes fs:RunRisk ; fg:senseKey vn:Gamble_70000000 .
wn:venture-verb-3 fg:evokes fs:Daring ; fg:senseKey vn:Venture_94100000 .
wn:dangerous-adjective-1 fg:evokes fs:RiskySituation .

wn:risk-verb-2 owl:sameAs yago:RiskTaking .
yago:RiskTaking owl:sameAs wn:risk-verb-2 .

fs:RiskySituation a fg:Frame ;
    fg:element fse:RiskySituation.Asset, fse:RiskySituation.DangerousEntity .
fse:RiskySituation.Asset rdfs:label "Asset" ; fg:elementType "core" .
fse:RiskySituation.DangerousEntity rdfs:label "Dangerous_entity" ; fg:elementType "peripheral" .
fs:RunRisk a fg:Frame .
fs:BeingAtRisk a fg:Frame .
fs:Daring a fg:Frame .
fs:Endangering a fg:Frame .

cn:risk cn:IsA cn:venture .
cn:riskiness cn:DerivedFrom cn:risk .
cn:risk fg:externalUrl dbpedia:Risk, wiki:Q104493 .
cn:venture fg:externalUrl wikt:risky, wikt:riskful, wikt:risktaker .

pb:risk.01 skos:closeMatch fs:RunRisk .
bn:s00066712n skos:closeMatch fs:RiskySituation .
"""


def synonym_pairs(n: int) -> list[tuple[str, str]]:
    return [(f"Virtue{i:02d}", f"Virtue{i:02d}Kin") for i in range(1, n + 1)]


def padding_lexicon(pairs: list[tuple[str, str]]) -> str:
    """Entries that make each synonym pair share one sense, nothing more."""
    lines = ["", "# Synonym padding for the folk-value candidate merge.", ""]
    for base, alias in pairs:
        b, a = base.lower(), alias.lower()
        lines.append(
            f'lex:{b}-noun a fg:LexicalEntry ; fg:lemma "{b}" ; fg:pos "noun" ; fg:sense wn:{b}-noun-1 .'
        )
        lines.append(
            f'lex:{a}-noun a fg:LexicalEntry ; fg:lemma "{a}" ; fg:pos "noun" ; fg:sense wn:{b}-noun-1 .'
        )
    return "\n".join(lines) + "\n"


# -- value manifest ----------------------------------------------------------------

MFT_DYADS = [
    ("Care", "Harm"), ("Fairness", "Cheating"), ("Loyalty", "Betrayal"),
    ("Authority", "Subversion"), ("Purity", "Degradation"), ("Liberty", "Oppression"),
]
BHV_NAMES = [
    "SelfDirectionThought", "SelfDirectionAction", "Stimulation", "Hedonism",
    "Achievement", "PowerDominance", "PowerResources", "Face",
    "SecurityPersonal", "SecuritySocietal", "Tradition", "ConformityRules",
    "ConformityInterpersonal", "Humility", "BenevolenceCaring",
    "BenevolenceDependability", "UniversalismConcern", "UniversalismNature",
    "UniversalismTolerance", "Ambition", "Wisdom", "Harmony", "Autonomy",
]
FOLK_ALIGNMENTS = {
    "folk:Risk": "mft:Harm",
    "folk:Rigor": "mft:Authority",
    "folk:Learning": "bhv:SelfDirectionThought",
}


def build_candidates(pairs: list[tuple[str, str]]) -> tuple[list[ValueCandidate], dict[str, str]]:
    def candidate(label: str) -> ValueCandidate:
        url = NAMESPACES["wikt"] + label.lower()
        return ValueCandidate(label, f"fixture gloss for {label}", url)

    candidates = [candidate(label) for label in ("Risk", "Rigor", "Learning")]
    candidates += [candidate(f"Quality{i:03d}") for i in range(1, 282)]
    for base, alias in pairs:
        candidates.append(candidate(base))
        candidates.append(candidate(alias))
    candidates.append(candidate("Probity"))
    candidates.append(candidate("Uprightness"))
    overrides = {"Uprightness": "Probity"}
    return candidates, overrides


def write_values_csv(path: Path, folk_specs) -> None:
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["id", "module", "polarity", "dyadPartner", "parents", "provenanceUrls", "alignments"])
        for virtue, vice in MFT_DYADS:
            writer.writerow([f"mft:{virtue}", "MFT", "positive", f"mft:{vice}", "", "", ""])
            writer.writerow([f"mft:{vice}", "MFT", "negative", f"mft:{virtue}", "", "", ""])
        for name in BHV_NAMES:
            writer.writerow([f"bhv:{name}", "BHV", "", "", "", "", ""])
        for spec in folk_specs:
            value_id = PREFIXES.compact(spec.id.value)
            urls = "|".join(PREFIXES.compact(u.value) for u in spec.provenance_urls)
            writer.writerow([value_id, "FOLK", "", "", "", urls, FOLK_ALIGNMENTS.get(value_id, "")])


# -- expansion plans ---------------------------------------------------------------

PLANS = {
    "risk.plan": """\
value = folk:Risk
seed = risk
auto = lexicalUnit yago closeMatch
select.frame = selections/risk-frames.txt
select.frameElement = selections/risk-elements.txt
select.concept = selections/risk-concepts.txt
select.factual = selections/risk-factual.txt
""",
    "loyalty.plan": """\
value = mft:Loyalty
seed = dishonest
seed = national
auto = lexicalUnit
select.frame = selections/loyalty-frames.txt
""",
    "betrayal.plan": """\
value = mft:Betrayal
seed = expose
auto = lexicalUnit
select.frame = selections/betrayal-frames.txt
""",
    "rigor.plan": """\
value = folk:Rigor
seed = act of dishonesty
auto = lexicalUnit
select.frame = selections/rigor-frames.txt
""",
    "learning.plan": """\
value = folk:Learning
seed = course
auto = lexicalUnit
select.frame = selections/learning-frames.txt
""",
}

SELECTIONS = {
    "risk-frames.txt": "fs:BeingAtRisk\nfs:Daring\nfs:Endangering\nfs:RiskySituation\nfs:RunRisk\n",
    "risk-elements.txt": "fse:RiskySituation.Asset\nfse:RiskySituation.DangerousEntity\n",
    "risk-concepts.txt": "cn:venture\n",
    "risk-factual.txt": "dbpedia:Risk\nwiki:Q104493\n",
    "loyalty-frames.txt": "fs:Candidness\nfs:PoliticalLocales\n",
    "betrayal-frames.txt": "fs:RevealSecret\n",
    "rigor-frames.txt": "fs:Law\n",
    "learning-frames.txt": "fs:Education\n",
}


# -- the corpus roster -------------------------------------------------------------


@dataclass
class Sentence:
    sid: str
    status: str  # detected | graph | nograph
    rows: list[tuple[str, str, str]]  # (annotator, label, confidence)
    text: str = ""


def build_roster() -> list[Sentence]:
    sentences: list[Sentence] = []
    values = cycle(VALUE_LABELS)

    def add(status: str, rows: list[tuple[str, str, str]]) -> None:
        sentences.append(Sentence(f"s{len(sentences) + 1:04d}", status, rows))

    # Triples where two annotators share a value and A04 calls it thin morality:
    # the pair agrees outright, A04 only under the TM relaxation.
    ta_partners = ["A00"] * 4 + ["A01"] * 6 + ["A02"] * 12
    for partner in ta_partners:
        label = next(values)
        add("detected", [
            ("A03", label, CONFIDENT),
            (partner, label, CONFIDENT),
            ("A04", TM_LABEL, CONFIDENT),
        ])

    # Quads split two against two: no majority, so the value pair is rescued
    # only by the TM relaxation and the non-moral pair gets nothing.
    q4_spec = (
        [("A00", ("A03", "A02"))] * 9 + [("A00", ("A03", "A01"))] * 1
        + [("A01", ("A03", "A00"))] * 4 + [("A01", ("A03", "A02"))] * 3
        + [("A02", ("A03", "A00"))] * 4 + [("A02", ("A03", "A01"))] * 6
        + [("A03", ("A00", "A02"))] * 6 + [("A03", ("A01", "A02"))] * 2
    )
    for moral_partner, (nm1, nm2) in q4_spec:
        label = next(values)
        add("detected", [
            ("A04", label, CONFIDENT),
            (moral_partner, label, CONFIDENT),
            (nm1, NM_LABEL, CONFIDENT),
            (nm2, NM_LABEL, CONFIDENT),
        ])

    # Quads where three non-moral annotators form a majority and A04 stands
    # alone with thin morality: no moral peer, so even the relaxation fails.
    for excluded in ["A00", "A00", "A01", "A02", "A03", "A03"]:
        rows = [(a, NM_LABEL, CONFIDENT) for a in ("A00", "A01", "A02", "A03") if a != excluded]
        rows.append(("A04", TM_LABEL, CONFIDENT))
        add("detected", rows)

    # Pairs that split moral against non-moral: no cell of table 1 moves
    # except the totals. All not-confident rows live here or on solos.
    pn_spec = (
        [("A04", "A00")] * 24 + [("A04", "A01")] * 23 + [("A04", "A02")] * 23 + [("A04", "A03")] * 24
        + [("A03", "A00")] * 24 + [("A03", "A01")] * 18 + [("A03", "A02")] * 30
        + [("A02", "A00")] * 15 + [("A02", "A01")] * 7 + [("A02", "A03")] * 13
        + [("A01", "A02")] * 2 + [("A01", "A03")] * 18
        + [("A00", "A03")] * 18
    )
    value_budget = {"A04": 50, "A03": 30, "A02": 15, "A01": 10, "A00": 9}
    nc_budget = {"A00": 66, "A01": 1, "A02": 5, "A03": 6}
    undetected_value_pairs = 8
    for moral, nonmoral in pn_spec:
        if value_budget[moral] > 0:
            value_budget[moral] -= 1
            label = next(values)
        else:
            label = TM_LABEL
        rows = []
        for annotator, row_label in ((moral, label), (nonmoral, NM_LABEL)):
            if nc_budget.get(annotator, 0) > 0:
                nc_budget[annotator] -= 1
                rows.append((annotator, row_label, NOT_CONFIDENT))
            else:
                rows.append((annotator, row_label, CONFIDENT))
        if label != TM_LABEL and undetected_value_pairs > 0:
            undetected_value_pairs -= 1
            add("graph", rows)
        else:
            add("detected", rows)

    # Solo non-moral rows; agreement is trivially 1.0, so the 28 not-confident
    # rows A00 still owes land here to pull its confident column down.
    solo_counts = {"A00": 44, "A01": 42, "A02": 48, "A03": 96, "A04": 6}
    detected_solos = 163
    a00_nc_solos = 28
    for annotator in ANNOTATORS:
        for _ in range(solo_counts[annotator]):
            confidence = CONFIDENT
            if annotator == "A00" and a00_nc_solos > 0:
                a00_nc_solos -= 1
                confidence = NOT_CONFIDENT
            status = "detected" if detected_solos > 0 else "graph"
            if detected_solos > 0:
                detected_solos -= 1
            add(status, [(annotator, NM_LABEL, confidence)])

    # Solo rows on text the lexicon cannot anchor at all.
    ng_counts = {"A00": 12, "A01": 11, "A02": 11, "A03": 11, "A04": 11}
    for annotator in ANNOTATORS:
        for _ in range(ng_counts[annotator]):
            add("nograph", [(annotator, NM_LABEL, CONFIDENT)])

    assert len(sentences) == 594
    return sentences


def assign_texts(sentences: list[Sentence]) -> None:
    trigger = cycle(TRIGGER_WORDS)
    graph_only = cycle(GRAPH_WORDS)
    for sentence in sentences:
        tag = f"t{int(sentence.sid[1:])}"
        if sentence.status == "detected":
            sentence.text = f"People consider the {next(trigger)} again {tag}."
        elif sentence.status == "graph":
            sentence.text = f"They {next(graph_only)} quietly {tag}."
        else:
            sentence.text = f"Qux corge waldo {tag}."


def tally(sentences: list[Sentence]) -> tuple[dict[str, tuple[int, ...]], tuple[int, ...], int]:
    """Independent recount of both tables, straight from the roster rows."""
    per = {a: [0, 0, 0, 0, 0] for a in ANNOTATORS}
    total = graphs = value_rows = tm_rows = nm_rows = detected = overlap = 0
    for sentence in sentences:
        total += len(sentence.rows)
        if sentence.status == "nograph":
            continue
        counts = Counter(label for _, label, _ in sentence.rows)
        majority = {label for label, n in counts.items() if 2 * n > len(sentence.rows)}
        for annotator, label, confidence in sentence.rows:
            cells = per[annotator]
            confident = confidence != NOT_CONFIDENT
            cells[0] += 1
            cells[1] += confident
            agree = label in majority
            peer_moral = any(
                other_label != NM_LABEL
                for other, other_label, _ in sentence.rows
                if other != annotator
            )
            agree_tm = agree or (label != NM_LABEL and peer_moral)
            cells[2] += agree
            cells[3] += agree_tm
            cells[4] += agree_tm and confident
            graphs += 1
            if label == TM_LABEL:
                tm_rows += 1
            elif label == NM_LABEL:
                nm_rows += 1
            else:
                value_rows += 1
            if sentence.status == "detected":
                detected += 1
                overlap += label in (TM_LABEL, NM_LABEL)
    table1 = {a: tuple(cells) for a, cells in per.items()}
    table2 = (total, graphs, value_rows, tm_rows, nm_rows, detected)
    return table1, table2, overlap


# -- writing -----------------------------------------------------------------------


def write_corpus(sentences: list[Sentence]) -> None:
    corpus_dir = FIXTURES / "corpus"
    corpus_dir.mkdir(parents=True, exist_ok=True)

    with (FIXTURES / "corpus" / "annotations.csv").open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["id", "text", "annotator", "labels", "confidence"])
        for sentence in sentences:
            for annotator, label, confidence in sentence.rows:
                writer.writerow([sentence.sid, sentence.text, annotator, label, confidence])

    with (corpus_dir / "sentences.jsonl").open("w", encoding="utf-8") as handle:
        for sentence in sentences:
            handle.write(json.dumps({"id": sentence.sid, "text": sentence.text}) + "\n")

    with (corpus_dir / "sentences_1k.jsonl").open("w", encoding="utf-8") as handle:
        for i in range(1000):
            source = sentences[i % len(sentences)]
            handle.write(json.dumps({"id": f"k{i + 1:04d}", "text": source.text}) + "\n")

    with (corpus_dir / "worked_example.jsonl").open("w", encoding="utf-8") as handle:
        handle.write(json.dumps({"id": "g357", "text": WORKED_EXAMPLE}) + "\n")


def write_labels() -> None:
    lines = [f"{label} = mft:{label}" for pair in MFT_DYADS for label in pair]
    lines += ["Risk = folk:Risk", "Rigor = folk:Rigor", "Learning = folk:Learning"]
    lines += [f"{TM_LABEL} = fg:ThinMorality", f"{NM_LABEL} = fg:NonMoral"]
    (FIXTURES / "labels.cfg").write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_candidate_files(candidates: list[ValueCandidate], overrides: dict[str, str]) -> None:
    with (FIXTURES / "candidates.csv").open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["label", "definition", "sourceUrl"])
        for candidate in candidates:
            writer.writerow([candidate.label, candidate.definition, candidate.source_url])
    merge_lines = [f"{alias} -> {canonical}" for alias, canonical in overrides.items()]
    (FIXTURES / "merges.cfg").write_text("\n".join(merge_lines) + "\n", encoding="utf-8")


MANIFEST = """\
prefixes = prefixes.cfg
graph = kb/lexicon.ttl | turtle | g:lexicon | lexical
values = values.csv
plan = plans/risk.plan
plan = plans/loyalty.plan
plan = plans/betrayal.plan
plan = plans/rigor.plan
plan = plans/learning.plan
corpus = corpus/annotations.csv
labelMap = labels.cfg
detectorMode = firstSense
"""


def write_fixtures() -> list[Sentence]:
    (FIXTURES / "kb").mkdir(parents=True, exist_ok=True)
    (FIXTURES / "plans" / "selections").mkdir(parents=True, exist_ok=True)

    prefix_lines = "".join(f"{p} = {ns}\n" for p, ns in NAMESPACES.items())
    (FIXTURES / "prefixes.cfg").write_text(prefix_lines, encoding="utf-8")

    pairs = synonym_pairs(35)
    lexicon_text = PREFIX_HEADER + LEXICON_CORE + padding_lexicon(pairs)
    (FIXTURES / "kb" / "lexicon.ttl").write_text(lexicon_text, encoding="utf-8")

    # The folk section of the value manifest comes out of the real candidate
    # merge so the shipped counts (356 in, 320 out) stay honest.
    store = TripleStore()
    store.extend(PREFIXES.expand("g:lexicon"), parse_turtle(lexicon_text))
    store.freeze()
    lexicon = Lexicon(store, [PREFIXES.expand("g:lexicon")])
    candidates, overrides = build_candidates(pairs)
    write_candidate_files(candidates, overrides)
    merge_overrides = load_merge_overrides(FIXTURES / "merges.cfg")
    folk_specs, merge_records = dedupe_candidates(candidates, lexicon, merge_overrides)
    assert len(candidates) == 356, len(candidates)
    assert len(folk_specs) == 320, len(folk_specs)
    assert len(merge_records) == 36, len(merge_records)
    write_values_csv(FIXTURES / "values.csv", folk_specs)

    write_labels()
    for name, text in PLANS.items():
        (FIXTURES / "plans" / name).write_text(text, encoding="utf-8")
    for name, text in SELECTIONS.items():
        (FIXTURES / "plans" / "selections" / name).write_text(text, encoding="utf-8")

    sentences = build_roster()
    assign_texts(sentences)

    table1, table2, overlap = tally(sentences)
    for annotator, expected in TABLE1.items():
        assert table1[annotator] == expected, (annotator, table1[annotator], expected)
    assert table2 == TABLE2, (table2, TABLE2)
    assert overlap == OVERLAP, overlap

    lemma_pool = {w for w in TRIGGER_WORDS + GRAPH_WORDS}
    assert not lemma_pool & set(FILLER_WORDS)
    for filler in FILLER_WORDS:
        assert not lexicon.lookup_form(filler), filler

    write_corpus(sentences)
    (FIXTURES / "manifest.cfg").write_text(MANIFEST, encoding="utf-8")
    return sentences


# -- pipeline self-check -----------------------------------------------------------


def verify_pipeline(sentences: list[Sentence]) -> None:
    manifest_path = str(FIXTURES / "manifest.cfg")
    with tempfile.TemporaryDirectory() as scratch:
        workspace = Path(scratch) / "workspace"
        out_dir = Path(scratch) / "out"
        os.environ[WORKSPACE_ENV] = str(workspace)
        try:
            assert cli.main(["build-kb", "--manifest", manifest_path]) == 0
            assert cli.main(["expand", "--manifest", manifest_path, "--all"]) == 0
            assert cli.main([
                "detect", "--manifest", manifest_path,
                "--input", str(FIXTURES / "corpus" / "sentences.jsonl"),
                "--out", str(out_dir),
            ]) == 0

            by_id = {s.sid: s for s in sentences}
            for line in (out_dir / "summary.jsonl").read_text(encoding="utf-8").splitlines():
                summary = json.loads(line)
                intent = by_id[summary["id"]]
                assert summary["noGraph"] == (intent.status == "nograph"), summary
                assert bool(summary["values"]) == (intent.status == "detected"), summary

            store, lexicon, meta = load_workspace(workspace)
            load_trigger_graphs(store, workspace)
            store.freeze()
            detector = Detector(store, lexicon, meta["detectorMode"])
            result = detector.run(WORKED_EXAMPLE, "g357")
            found = sorted(PREFIXES.compact(v.value) for v in result.values)
            assert found == WORKED_EXAMPLE_VALUES, found
        finally:
            del os.environ[WORKSPACE_ENV]


def main() -> int:
    sentences = write_fixtures()
    verify_pipeline(sentences)
    rows = sum(len(s.rows) for s in sentences)
    print(f"fixtures written to {FIXTURES}")
    print(f"sentences: {len(sentences)}  corpus rows: {rows}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
