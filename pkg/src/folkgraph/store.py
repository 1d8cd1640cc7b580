"""In-memory triple store with named graphs and pattern matching.

Each named graph keeps three hash indexes (subject, predicate, object) over a
set of triples, so single-position lookups are dict hits and a basic graph
pattern can always start from its most selective constant. Stores are built
once and then frozen; mutation after freeze is a bug in the caller.
"""

from __future__ import annotations

from itertools import permutations

from .terms import BLANK, Binding, Pattern, Term, Triple, Variable


class StoreError(ValueError):
    pass


class NamedGraph:
    """A set of triples under one graph name, with S/P/O indexes."""

    def __init__(self, name: Term):
        self.name = name
        self.triples: set[Triple] = set()
        self._by_s: dict[Term, set[Triple]] = {}
        self._by_p: dict[Term, set[Triple]] = {}
        self._by_o: dict[Term, set[Triple]] = {}

    def __len__(self) -> int:
        return len(self.triples)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self.triples

    def add(self, triple: Triple) -> None:
        if triple in self.triples:
            return
        self.triples.add(triple)
        self._by_s.setdefault(triple.s, set()).add(triple)
        self._by_p.setdefault(triple.p, set()).add(triple)
        self._by_o.setdefault(triple.o, set()).add(triple)

    def candidates(self, s: Term | None, p: Term | None, o: Term | None):
        """Triples matching the given constants; None positions are wildcards.

        Scans the smallest index bucket among the bound positions.
        """
        pools = []
        if s is not None:
            pools.append(self._by_s.get(s, set()))
        if p is not None:
            pools.append(self._by_p.get(p, set()))
        if o is not None:
            pools.append(self._by_o.get(o, set()))
        if not pools:
            return iter(self.triples)
        smallest = min(pools, key=len)
        return (
            t
            for t in smallest
            if (s is None or t.s == s) and (p is None or t.p == p) and (o is None or t.o == o)
        )


class TripleStore:
    """Named graphs plus cross-graph pattern matching."""

    def __init__(self):
        self.graphs: dict[Term, NamedGraph] = {}
        self.frozen = False

    # -- construction ------------------------------------------------------

    def create_graph(self, name: Term) -> NamedGraph:
        self._check_mutable()
        if name in self.graphs:
            raise StoreError(f"graph already exists: {name.value}")
        graph = NamedGraph(name)
        self.graphs[name] = graph
        return graph

    def add(self, graph_name: Term, triple: Triple) -> None:
        self._check_mutable()
        try:
            graph = self.graphs[graph_name]
        except KeyError:
            raise StoreError(f"no such graph: {graph_name.value}") from None
        graph.add(triple)

    def extend(self, graph_name: Term, triples) -> None:
        self._check_mutable()
        if graph_name in self.graphs:
            graph = self.graphs[graph_name]
        else:
            graph = self.create_graph(graph_name)
        for t in triples:
            graph.add(t)

    def freeze(self) -> None:
        self.frozen = True

    def _check_mutable(self) -> None:
        if self.frozen:
            raise StoreError("store is frozen")

    # -- inspection --------------------------------------------------------

    def graph(self, name: Term) -> NamedGraph:
        try:
            return self.graphs[name]
        except KeyError:
            raise StoreError(f"no such graph: {name.value}") from None

    def __len__(self) -> int:
        return sum(len(g) for g in self.graphs.values())

    def all_triples(self):
        for graph in self.graphs.values():
            yield from graph.triples

    # -- matching ----------------------------------------------------------

    def _scopes(self, graph_name: Term | None) -> list[NamedGraph]:
        if graph_name is None:
            return list(self.graphs.values())
        return [self.graph(graph_name)]

    def match_pattern(self, pattern: Pattern, binding: Binding | None = None):
        """Yield extended bindings for one pattern, unsorted and undeduplicated."""
        binding = binding or {}
        slots = []
        consts = []
        for position in ("s", "p", "o"):
            part = getattr(pattern, position)
            if isinstance(part, Variable):
                bound = binding.get(part.name)
                slots.append(part.name if bound is None else None)
                consts.append(bound)
            else:
                slots.append(None)
                consts.append(part)
        for graph in self._scopes(pattern.graph):
            for triple in graph.candidates(*consts):
                extended = dict(binding)
                ok = True
                for slot, value in zip(slots, (triple.s, triple.p, triple.o)):
                    if slot is None:
                        continue
                    if slot in extended and extended[slot] != value:
                        ok = False
                        break
                    extended[slot] = value
                if ok:
                    yield extended

    def match(self, patterns: list[Pattern]) -> list[Binding]:
        """Solve a basic graph pattern: sorted, deduplicated bindings.

        Patterns are joined left to right, most-constrained first at each
        step (fewest unbound variables, constants counted as bound).
        """
        if not patterns:
            raise StoreError("empty pattern list")
        bindings: list[Binding] = [{}]
        remaining = list(patterns)
        while remaining:
            bound_vars = set(bindings[0]) if bindings else set()

            def unbound(p: Pattern) -> int:
                return sum(
                    1
                    for part in (p.s, p.p, p.o)
                    if isinstance(part, Variable) and part.name not in bound_vars
                )

            remaining.sort(key=unbound)
            pattern = remaining.pop(0)
            bindings = [ext for b in bindings for ext in self.match_pattern(pattern, b)]
            if not bindings:
                return []
        return _unique_sorted(bindings)

    def ask(self, patterns: list[Pattern]) -> bool:
        if not patterns:
            raise StoreError("empty pattern list")
        bindings: list[Binding] = [{}]
        for pattern in patterns:
            bindings = [ext for b in bindings for ext in self.match_pattern(pattern, b)]
            if not bindings:
                return False
        return True


def _unique_sorted(bindings: list[Binding]) -> list[Binding]:
    def key(b: Binding):
        return tuple((name, b[name].key()) for name in sorted(b))

    seen = set()
    out = []
    for b in sorted(bindings, key=key):
        k = key(b)
        if k not in seen:
            seen.add(k)
            out.append(b)
    return out


# -- isomorphism -------------------------------------------------------------


def isomorphic(a, b) -> bool:
    """Whether two triple collections are equal up to blank node relabeling.

    Ground triples must match exactly. Blank-containing triples are checked
    by refining candidate label pairings on structural signatures, with a
    permutation search over any leftover ties. Blank node populations in the
    pipeline are tiny, so the search is never a concern.
    """
    a, b = set(a), set(b)
    ground_a = {t for t in a if not _has_blank(t)}
    ground_b = {t for t in b if not _has_blank(t)}
    if ground_a != ground_b:
        return False
    rest_a, rest_b = a - ground_a, b - ground_b
    if len(rest_a) != len(rest_b):
        return False
    if not rest_a:
        return True

    sig_a = _signatures(rest_a)
    sig_b = _signatures(rest_b)
    groups_a: dict[tuple, list[Term]] = {}
    groups_b: dict[tuple, list[Term]] = {}
    for node, sig in sig_a.items():
        groups_a.setdefault(sig, []).append(node)
    for node, sig in sig_b.items():
        groups_b.setdefault(sig, []).append(node)
    if set(groups_a) != set(groups_b):
        return False
    if any(len(groups_a[s]) != len(groups_b[s]) for s in groups_a):
        return False

    # Permute within signature groups; signatures usually pin everything down.
    def assignments(sigs):
        if not sigs:
            yield {}
            return
        sig, rest = sigs[0], sigs[1:]
        for tail in assignments(rest):
            for perm in permutations(groups_b[sig]):
                mapping = dict(zip(groups_a[sig], perm))
                mapping.update(tail)
                yield mapping

    for mapping in assignments(sorted(groups_a)):
        if {_rename(t, mapping) for t in rest_a} == rest_b:
            return True
    return False


def _has_blank(t: Triple) -> bool:
    return t.s.kind == BLANK or t.o.kind == BLANK


def _signatures(triples: set[Triple]) -> dict[Term, tuple]:
    """Per-blank-node structural fingerprints, refined to a fixpoint."""
    nodes = {term for t in triples for term in (t.s, t.o) if term.kind == BLANK}
    colors: dict[Term, tuple] = {node: () for node in nodes}
    for _ in range(len(nodes) + 1):
        nxt = {}
        for node in nodes:
            out = []
            inc = []
            for t in triples:
                if t.s == node:
                    out.append((t.p.key(), _color_of(t.o, colors)))
                if t.o == node:
                    inc.append((t.p.key(), _color_of(t.s, colors)))
            nxt[node] = (tuple(sorted(out)), tuple(sorted(inc)))
        if nxt == colors:
            break
        colors = nxt
    return colors


def _color_of(term: Term, colors: dict[Term, tuple]):
    if term.kind == BLANK:
        return ("blank", colors[term])
    return ("ground", term.key())


def _rename(t: Triple, mapping: dict[Term, Term]) -> Triple:
    s = mapping.get(t.s, t.s) if t.s.kind == BLANK else t.s
    o = mapping.get(t.o, t.o) if t.o.kind == BLANK else t.o
    return Triple(s, t.p, o)
