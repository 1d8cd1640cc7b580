"""Command-line pipeline: build-kb, expand, detect, eval.

Commands communicate through the workspace directory only, so each run is
reproducible from the manifest plus fixture files. Exit codes: 0 on success,
2 for input or configuration problems, 3 for data-consistency problems
(stale selection files, corpus/detection mismatches, duplicate ids).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .detector import Detector, DetectorError
from .evaluation import (
    EvalError,
    annotator_stats,
    coverage_stats,
    load_corpus,
    load_detections,
    load_label_map,
    render_annotator_table,
    render_coverage_table,
    render_histogram,
    report_json,
)
from .expansion import Expander, PlanError, StaleSelectionError, parse_plan
from .lexicon import LexiconError
from .manifest import (
    Manifest,
    ManifestError,
    build_workspace,
    load_manifest,
    load_trigger_graphs,
    load_workspace,
    safe_name,
    workspace_dir,
)
from .rdfio import ParseError, to_ntriples
from .store import StoreError
from .values import ValueModelError

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DATA = 3


class DataError(ValueError):
    """Input that parses but contradicts itself (duplicate ids and the like)."""


# -- commands ----------------------------------------------------------------


def cmd_build_kb(args: argparse.Namespace) -> int:
    manifest = load_manifest(args.manifest)
    workspace = workspace_dir(args.manifest)
    meta = build_workspace(manifest, workspace)
    counts = meta["counts"]
    print(f"workspace: {workspace}")
    print(f"graphs: {counts['graphs']}  triples: {counts['triples']}  values: {counts['values']}")
    return EXIT_OK


def cmd_expand(args: argparse.Namespace) -> int:
    manifest = load_manifest(args.manifest)
    workspace = workspace_dir(args.manifest)
    store, lexicon, _ = load_workspace(workspace)
    store.freeze()
    expander = Expander(store, lexicon, manifest.prefixes)

    plans = [parse_plan(path, manifest.prefixes) for path in manifest.plans]
    if args.value is not None:
        wanted = manifest.prefixes.expand(args.value)
        plans = [plan for plan in plans if plan.value == wanted]
        if not plans:
            raise ManifestError(f"no expansion plan for value {args.value!r}")

    triggers_dir = workspace / "triggers"
    reports_dir = workspace / "reports"
    triggers_dir.mkdir(parents=True, exist_ok=True)
    reports_dir.mkdir(parents=True, exist_ok=True)

    for plan in plans:
        report = expander.run_plan(plan)
        short = manifest.prefixes.compact(plan.value.value)
        stem = safe_name(short)
        triples = expander.graph_triples(report)
        (triggers_dir / f"{stem}.nt").write_text(to_ntriples(triples), encoding="utf-8")
        payload = json.dumps(report.to_json_dict(manifest.prefixes), indent=2, sort_keys=True)
        (reports_dir / f"{stem}.json").write_text(payload + "\n", encoding="utf-8")
        note = ""
        proposed = report.proposed()
        if proposed:
            note = f"  (proposed, awaiting selection: {' '.join(proposed)})"
        print(f"{short}: {len(report.edges)} trigger edges, {len(triples)} triples{note}")
    print(f"plans run: {len(plans)}")
    return EXIT_OK


def _read_sentences(path: Path) -> list[tuple[str, str]]:
    if not path.is_file():
        raise ManifestError(f"input file does not exist: {path}")
    pairs: list[tuple[str, str]] = []
    if path.suffix == ".jsonl":
        for line, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
            if not raw.strip():
                continue
            try:
                payload = json.loads(raw)
                pairs.append((str(payload["id"]), payload["text"]))
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise ManifestError(f"{path}:{line}: bad sentence record: {exc}") from None
    else:
        for line, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
            if raw.strip():
                pairs.append((str(line), raw))
    seen: set[str] = set()
    for sentence_id, _ in pairs:
        if sentence_id in seen:
            raise DataError(f"{path}: duplicate sentence id {sentence_id!r}")
        seen.add(sentence_id)
    return pairs


def _build_detector(manifest: Manifest, workspace: Path) -> Detector:
    store, lexicon, _ = load_workspace(workspace)
    load_trigger_graphs(store, workspace)
    store.freeze()
    return Detector(store, lexicon, manifest.detector_mode)


_worker_detector: Detector | None = None
_worker_manifest: Manifest | None = None


def _worker_init(manifest_path: str) -> None:
    global _worker_detector, _worker_manifest
    _worker_manifest = load_manifest(manifest_path)
    _worker_detector = _build_detector(_worker_manifest, workspace_dir(manifest_path))


def _detect_one(detector: Detector, manifest: Manifest, item: tuple[str, str]) -> tuple[str, str, str | None]:
    sentence_id, text = item
    result = detector.run(text, sentence_id)
    graph_nt = None if result.graph.no_graph else to_ntriples(result.triples())
    return sentence_id, result.summary_line(manifest.prefixes), graph_nt


def _worker_run(item: tuple[str, str]) -> tuple[str, str, str | None]:
    assert _worker_detector is not None and _worker_manifest is not None
    return _detect_one(_worker_detector, _worker_manifest, item)


def cmd_detect(args: argparse.Namespace) -> int:
    manifest = load_manifest(args.manifest)
    workspace = workspace_dir(args.manifest)
    sentences = _read_sentences(Path(args.input))
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    if args.jobs > 1 and sentences:
        chunk = max(1, len(sentences) // (args.jobs * 4))
        with ProcessPoolExecutor(
            max_workers=args.jobs, initializer=_worker_init, initargs=(str(args.manifest),)
        ) as pool:
            results = list(pool.map(_worker_run, sentences, chunksize=chunk))
    else:
        detector = _build_detector(manifest, workspace)
        results = [_detect_one(detector, manifest, item) for item in sentences]

    graphs = 0
    with (out_dir / "summary.jsonl").open("w", encoding="utf-8") as summary:
        for sentence_id, line, graph_nt in results:
            summary.write(line + "\n")
            if graph_nt is not None:
                graphs += 1
                (out_dir / f"{safe_name(sentence_id)}.nt").write_text(graph_nt, encoding="utf-8")
    print(f"sentences: {len(results)}  graphs: {graphs}  noGraph: {len(results) - graphs}")
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    manifest = load_manifest(args.manifest)
    if manifest.corpus is None:
        raise ManifestError(f"{manifest.path}: eval needs a corpus entry in the manifest")
    if manifest.label_map is None:
        raise ManifestError(f"{manifest.path}: eval needs a labelMap entry in the manifest")
    workspace = workspace_dir(args.manifest)
    label_map = load_label_map(manifest.label_map, manifest.prefixes)
    fmt = "jsonl" if manifest.corpus.suffix == ".jsonl" else "csv"
    load = load_corpus(manifest.corpus, fmt, label_map)
    for line, reason in load.skipped:
        print(f"skipped corpus row at line {line}: {reason}", file=sys.stderr)

    eval_dir = workspace / "eval"
    eval_dir.mkdir(parents=True, exist_ok=True)

    if args.detections is None:
        table = render_annotator_table(annotator_stats(load.rows))
        (eval_dir / "annotators.txt").write_text(table, encoding="utf-8")
        print(table, end="")
        return EXIT_OK

    records = load_detections(args.detections, manifest.prefixes)
    report = coverage_stats(load.rows, records)
    table1 = render_annotator_table(report.per_annotator)
    table2 = render_coverage_table(report)
    (eval_dir / "annotators.txt").write_text(table1, encoding="utf-8")
    (eval_dir / "coverage.txt").write_text(table2, encoding="utf-8")
    (eval_dir / "histogram.tsv").write_text(render_histogram(report, manifest.prefixes), encoding="utf-8")
    (eval_dir / "report.json").write_text(report_json(report, manifest.prefixes), encoding="utf-8")
    print(table1, end="")
    print(table2, end="")
    return EXIT_OK


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="folkgraph",
        description="Knowledge-graph value detection pipeline.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    build = commands.add_parser("build-kb", help="load fixture graphs and freeze a workspace")
    build.set_defaults(func=cmd_build_kb)

    expand = commands.add_parser("expand", help="run trigger expansion plans")
    scope = expand.add_mutually_exclusive_group(required=True)
    scope.add_argument("--value", help="expand a single value (IRI or prefixed name)")
    scope.add_argument("--all", action="store_true", help="expand every plan in the manifest")
    expand.set_defaults(func=cmd_expand)

    detect = commands.add_parser("detect", help="annotate sentences and detect value activations")
    detect.add_argument("--input", required=True, help="sentences file (.jsonl with id/text, else one per line)")
    detect.add_argument("--out", required=True, help="output directory for graphs and summary.jsonl")
    detect.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    detect.set_defaults(func=cmd_detect)

    evaluate = commands.add_parser("eval", help="corpus statistics and detection coverage")
    evaluate.add_argument("--detections", help="summary.jsonl from a detect run")
    evaluate.set_defaults(func=cmd_eval)

    for sub in (build, expand, detect, evaluate):
        sub.add_argument("--manifest", required=True, help="pipeline manifest file")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (StaleSelectionError, EvalError, DataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (
        ManifestError,
        PlanError,
        ParseError,
        LexiconError,
        ValueModelError,
        StoreError,
        DetectorError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
