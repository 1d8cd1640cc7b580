"""Indexed view over the lexical knowledge graphs.

Entries, frames, and frame elements are scanned once from the graphs marked
with the `lexical` role and indexed by lemma and surface form. Sense-level
links (evoked frames, verb classes, concept hops, external alignments) are
answered by pattern matching against the store, so every answer given here
is reproducible as a BGP result.

Sense rank follows the WordNet numbering convention: the trailing integer of
the sense IRI (`...risk-verb-2` has rank 2), rank 1 being the default sense.
File order cannot carry rank because graphs are sets.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import vocab
from .store import TripleStore
from .terms import LITERAL, Pattern, Term, Variable

POS_VALUES = ("noun", "verb", "adjective", "adverb", "multiword")
_POS_ORDER = {pos: i for i, pos in enumerate(POS_VALUES)}
ELEMENT_TYPES = ("core", "peripheral", "extraThematic")

_RANK_RE = re.compile(r"-(\d+)$")


class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class LexicalEntry:
    node: Term
    lemma: str
    pos: str
    senses: tuple[Term, ...]
    concept_anchors: tuple[Term, ...] = ()

    @property
    def default_sense(self) -> Term:
        return self.senses[0]


@dataclass(frozen=True)
class FrameElement:
    id: Term
    name: str
    element_type: str


def sense_rank(sense: Term) -> int:
    match = _RANK_RE.search(sense.value)
    return int(match.group(1)) if match else 10**9


class Lexicon:
    def __init__(self, store: TripleStore, lexical_graphs: list[Term]):
        self.store = store
        self.graph_names = list(lexical_graphs)
        self._by_lemma: dict[str, list[LexicalEntry]] = {}
        self._by_form: dict[str, list[LexicalEntry]] = {}
        self._frames: dict[Term, list[FrameElement]] = {}
        self._multiwords: list[tuple[str, ...]] = []
        self._build()

    # -- build ---------------------------------------------------------------

    def _scan(self, s=None, p=None, o=None):
        for name in self.graph_names:
            yield from self.store.graph(name).candidates(s, p, o)

    def _literal(self, subject: Term, predicate: Term, what: str) -> str:
        values = [t.o.value for t in self._scan(s=subject, p=predicate) if t.o.kind == LITERAL]
        if len(values) != 1:
            raise LexiconError(f"{subject.value}: expected exactly one {what}, found {len(values)}")
        return values[0]

    def _build(self) -> None:
        for triple in self._scan(p=vocab.RDF_TYPE, o=vocab.LEXICAL_ENTRY):
            self._index_entry(triple.s)
        for triple in self._scan(p=vocab.RDF_TYPE, o=vocab.FRAME):
            self._index_frame(triple.s)
        for entries in self._by_lemma.values():
            entries.sort(key=lambda e: (_POS_ORDER[e.pos], e.node.key()))
        for entries in self._by_form.values():
            entries.sort(key=lambda e: (_POS_ORDER[e.pos], e.node.key()))
        self._multiwords.sort(key=lambda words: (-len(words), words))
        self._check_same_as_symmetry()

    def _index_entry(self, node: Term) -> None:
        lemma = self._literal(node, vocab.LEMMA, "lemma")
        pos = self._literal(node, vocab.POS, "pos")
        if pos not in _POS_ORDER:
            raise LexiconError(f"{node.value}: unknown pos {pos!r}")
        senses = sorted(
            (t.o for t in self._scan(s=node, p=vocab.SENSE)),
            key=lambda s: (sense_rank(s), s.key()),
        )
        if not senses:
            raise LexiconError(f"{node.value}: entry has no senses")
        anchors = sorted((t.o for t in self._scan(s=node, p=vocab.CONCEPT_ANCHOR)), key=Term.key)
        entry = LexicalEntry(node, lemma, pos, tuple(senses), tuple(anchors))
        self._by_lemma.setdefault(lemma, []).append(entry)
        for triple in self._scan(s=node, p=vocab.FORM):
            self._by_form.setdefault(triple.o.value, []).append(entry)
        if pos == "multiword":
            self._multiwords.append(tuple(lemma.split(" ")))

    def _index_frame(self, node: Term) -> None:
        elements = []
        names = set()
        for triple in sorted(self._scan(s=node, p=vocab.ELEMENT), key=lambda t: t.o.key()):
            fe = triple.o
            name = self._literal(fe, vocab.RDFS_LABEL, "element label")
            element_type = self._literal(fe, vocab.ELEMENT_TYPE, "element type")
            if element_type not in ELEMENT_TYPES:
                raise LexiconError(f"{fe.value}: unknown element type {element_type!r}")
            if name in names:
                raise LexiconError(f"{node.value}: duplicate element name {name!r}")
            names.add(name)
            elements.append(FrameElement(fe, name, element_type))
        self._frames[node] = elements

    def _check_same_as_symmetry(self) -> None:
        links = {(t.s, t.o) for t in self._scan(p=vocab.OWL_SAME_AS)}
        for s, o in sorted(links, key=lambda pair: (pair[0].key(), pair[1].key())):
            if (o, s) not in links:
                raise LexiconError(f"sameAs is asymmetric: {s.value} -> {o.value} has no inverse")

    # -- lookups ---------------------------------------------------------------

    def lookup_lemma(self, lemma: str, pos: str | None = None) -> list[LexicalEntry]:
        if not lemma:
            raise LexiconError("empty lemma")
        entries = self._by_lemma.get(lemma, [])
        if pos is not None:
            entries = [e for e in entries if e.pos == pos]
        return list(entries)

    def lookup_form(self, form: str) -> list[LexicalEntry]:
        """Entries matching an inflected surface form (lemma matches included)."""
        if not form:
            raise LexiconError("empty form")
        seen = {e.node: e for e in self._by_lemma.get(form, [])}
        for entry in self._by_form.get(form, []):
            seen.setdefault(entry.node, entry)
        return sorted(seen.values(), key=lambda e: (_POS_ORDER[e.pos], e.node.key()))

    def multiwords(self) -> list[tuple[str, ...]]:
        """Multiword lemmas as token tuples, longest first."""
        return list(self._multiwords)

    def frames_of_sense(self, sense: Term) -> list[Term]:
        bindings = self.store.match([Pattern(sense, vocab.EVOKES, Variable("f"))])
        return [b["f"] for b in bindings]

    def verb_classes_of_sense(self, sense: Term) -> list[Term]:
        bindings = self.store.match([Pattern(sense, vocab.SENSE_KEY, Variable("v"))])
        return [b["v"] for b in bindings]

    def frame_elements(self, frame: Term, types: set[str]) -> list[FrameElement]:
        if frame not in self._frames:
            raise LexiconError(f"unknown frame: {frame.value}")
        bad = types - set(ELEMENT_TYPES)
        if bad:
            raise LexiconError(f"unknown element types: {sorted(bad)}")
        return [fe for fe in self._frames[frame] if fe.element_type in types]

    def known_frames(self) -> list[Term]:
        return sorted(self._frames, key=Term.key)
