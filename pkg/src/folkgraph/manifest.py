"""Pipeline manifest parsing and the on-disk workspace.

The manifest is a small ``key = value`` file next to the knowledge base
fixtures. ``graph`` entries carry four pipe-separated fields (path, format,
graph name, role) and may repeat, as may ``plan`` entries. All paths are
resolved relative to the manifest file.

The workspace is a directory of frozen artifacts passed between commands:
``graphs/`` holds one sorted N-Triples file per named graph plus
``meta.json`` describing names and roles, ``triggers/`` and ``reports/``
collect expansion output, and ``eval/`` collects statistics output. Its
location defaults to ``workspace/`` beside the manifest and can be moved
with the FOLKGRAPH_WORKSPACE environment variable.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from pathlib import Path

from . import vocab
from .detector import MODES
from .lexicon import Lexicon
from .rdfio import PrefixTable, parse, to_ntriples
from .store import TripleStore
from .terms import Term, iri
from .values import build_model, load_value_manifest

GRAPH_ROLES = ("lexical", "values", "triggers")
GRAPH_FORMATS = ("ntriples", "turtle")

WORKSPACE_ENV = "FOLKGRAPH_WORKSPACE"


class ManifestError(ValueError):
    pass


@dataclass(frozen=True)
class GraphFile:
    path: Path
    fmt: str
    name: Term
    role: str


@dataclass
class Manifest:
    path: Path
    prefix_path: Path
    prefixes: PrefixTable
    graph_files: list[GraphFile] = field(default_factory=list)
    plans: list[Path] = field(default_factory=list)
    detector_mode: str = "firstSense"
    values_csv: Path | None = None
    corpus: Path | None = None
    label_map: Path | None = None


def _require_file(path: Path, what: str) -> Path:
    if not path.is_file():
        raise ManifestError(f"{what} does not exist: {path}")
    return path


def load_manifest(path: str | Path) -> Manifest:
    path = Path(path)
    _require_file(path, "manifest")
    base = path.parent
    pairs: list[tuple[str, str]] = []
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ManifestError(f"{path}: malformed entry {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not value:
            raise ManifestError(f"{path}: empty value for {key!r}")
        pairs.append((key, value))

    by_key: dict[str, str] = {}
    graphs: list[str] = []
    plans: list[str] = []
    for key, value in pairs:
        if key == "graph":
            graphs.append(value)
        elif key == "plan":
            plans.append(value)
        elif key in ("prefixes", "values", "labelMap", "detectorMode", "corpus"):
            if key in by_key:
                raise ManifestError(f"{path}: duplicate key {key!r}")
            by_key[key] = value
        else:
            raise ManifestError(f"{path}: unknown key {key!r}")

    if "prefixes" not in by_key:
        raise ManifestError(f"{path}: missing prefixes entry")
    prefix_path = _require_file(base / by_key["prefixes"], "prefix table")
    prefixes = PrefixTable.from_file(prefix_path)

    mode = by_key.get("detectorMode", "firstSense")
    if mode not in MODES:
        raise ManifestError(f"{path}: unknown detectorMode {mode!r}")

    graph_files = []
    seen_names: set[Term] = set()
    for spec in graphs:
        fields = [part.strip() for part in spec.split("|")]
        if len(fields) != 4:
            raise ManifestError(f"{path}: graph entry needs path | format | name | role: {spec!r}")
        rel, fmt, name, role = fields
        if fmt not in GRAPH_FORMATS:
            raise ManifestError(f"{path}: unknown graph format {fmt!r}")
        if role not in GRAPH_ROLES:
            raise ManifestError(f"{path}: unknown graph role {role!r}")
        term = prefixes.expand(name)
        if term in seen_names:
            raise ManifestError(f"{path}: duplicate graph name {name!r}")
        seen_names.add(term)
        graph_files.append(GraphFile(_require_file(base / rel, "graph file"), fmt, term, role))

    return Manifest(
        path=path,
        prefix_path=prefix_path,
        prefixes=prefixes,
        graph_files=graph_files,
        plans=[_require_file(base / rel, "plan file") for rel in plans],
        detector_mode=mode,
        values_csv=_require_file(base / by_key["values"], "value manifest") if "values" in by_key else None,
        corpus=_require_file(base / by_key["corpus"], "corpus file") if "corpus" in by_key else None,
        label_map=_require_file(base / by_key["labelMap"], "label map") if "labelMap" in by_key else None,
    )


def workspace_dir(manifest_path: str | Path) -> Path:
    override = os.environ.get(WORKSPACE_ENV)
    if override:
        return Path(override)
    return Path(manifest_path).parent / "workspace"


def safe_name(compacted: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]", "_", compacted)


# -- building --------------------------------------------------------------------


def build_workspace(manifest: Manifest, workspace: Path) -> dict:
    store = TripleStore()
    entries = []
    for graph_file in manifest.graph_files:
        triples = parse(graph_file.path.read_text(encoding="utf-8"), graph_file.fmt)
        store.extend(graph_file.name, triples)
        entries.append({"name": graph_file.name.value, "role": graph_file.role})

    value_count = 0
    if manifest.values_csv is not None:
        model = build_model(load_value_manifest(manifest.values_csv, manifest.prefixes))
        value_count = len(model.values)
        for name, triples in sorted(model.module_graphs().items(), key=lambda kv: kv[0].key()):
            store.extend(name, triples)
            entries.append({"name": name.value, "role": "values"})

    lexical = [g.name for g in manifest.graph_files if g.role == "lexical"]
    Lexicon(store, lexical)  # build-time validation of the lexical layer
    store.freeze()

    graphs_dir = workspace / "graphs"
    graphs_dir.mkdir(parents=True, exist_ok=True)
    used = set()
    for entry in entries:
        stem = safe_name(manifest.prefixes.compact(entry["name"]))
        if stem in used:
            raise ManifestError(f"graph file name collision in workspace: {stem}")
        used.add(stem)
        entry["file"] = f"graphs/{stem}.nt"
        graph = store.graph(iri(entry["name"]))
        (workspace / entry["file"]).write_text(to_ntriples(graph.triples), encoding="utf-8")

    meta = {
        "detectorMode": manifest.detector_mode,
        "graphs": entries,
        "counts": {
            "graphs": len(entries),
            "triples": sum(len(store.graph(iri(e["name"])).triples) for e in entries),
            "values": value_count,
        },
    }
    (workspace / "meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return meta


# -- loading ---------------------------------------------------------------------


def read_meta(workspace: Path) -> dict:
    meta_path = workspace / "meta.json"
    if not meta_path.is_file():
        raise ManifestError(f"workspace not built (missing {meta_path}); run build-kb first")
    return json.loads(meta_path.read_text(encoding="utf-8"))


def load_workspace(workspace: Path) -> tuple[TripleStore, Lexicon, dict]:
    """Unfrozen store plus lexicon; callers freeze once extra graphs are in."""
    meta = read_meta(workspace)
    store = TripleStore()
    for entry in meta["graphs"]:
        triples = parse((workspace / entry["file"]).read_text(encoding="utf-8"), "ntriples")
        store.extend(iri(entry["name"]), triples)
    lexical = [iri(e["name"]) for e in meta["graphs"] if e["role"] == "lexical"]
    return store, Lexicon(store, lexical), meta


def load_trigger_graphs(store: TripleStore, workspace: Path) -> list[Term]:
    """Pull expansion output into the store; graph names recovered from content."""
    names = []
    triggers_dir = workspace / "triggers"
    if not triggers_dir.is_dir():
        return names
    for path in sorted(triggers_dir.glob("*.nt")):
        triples = parse(path.read_text(encoding="utf-8"), "ntriples")
        values = {t.o for t in triples if t.p == vocab.TRIGGERS}
        if not values:
            continue
        if len(values) > 1:
            raise ManifestError(f"{path}: trigger graph mixes multiple values")
        name = iri(values.pop().value + "/triggers")
        store.extend(name, triples)
        names.append(name)
    return names
