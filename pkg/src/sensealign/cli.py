"""Command line interface.

Subcommands cover the toolkit end to end: align two dictionaries,
train a relation classifier, evaluate predictions against gold,
report alignment statistics, infer translations over a multilingual
graph, compute inter-annotator agreement, and serve the curation API.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import evaluation, netstats, pipeline, translation
from .classifier import Task
from .errors import SenseAlignError
from .lexdata import (
    ALL_RELATIONS,
    SemanticRelation,
    load_benchmark,
    load_dictionary_tsv,
    load_translation_pairs,
    save_annotations,
)


def _fmt(value: float) -> str:
    return f"{value:.4f}"


def _strip_links(pairs):
    for p in pairs:
        p.links = []
    return pairs


def cmd_align(args: argparse.Namespace) -> int:
    cfg = pipeline.load_config(args.config) if args.config else pipeline.parse_config({})
    rt = pipeline.build_runtime(cfg)
    if args.benchmark:
        pairs = _strip_links(load_benchmark(args.benchmark))
        aligned = pipeline.run_alignment(pairs, rt)
    else:
        left = load_dictionary_tsv(args.left)
        right = load_dictionary_tsv(args.right)
        aligned = pipeline.align_dictionaries(left, right, rt)
    save_annotations(aligned, args.out)
    n_links = sum(len(p.links) for p in aligned)
    print(f"aligned\t{len(aligned)} entries\t{n_links} links\t{args.out}")
    return 0


def cmd_train(args: argparse.Namespace) -> int:
    pairs = []
    for path in args.benchmark:
        pairs.extend(load_benchmark(path))
    cfg = pipeline.parse_config(
        {
            "resources": {
                k: v
                for k, v in {
                    "embeddings": args.embeddings,
                    "relations": args.relations,
                    "stopwords": args.stopwords,
                }.items()
                if v
            }
        }
    )
    rt = pipeline.build_runtime(cfg)
    task = Task(args.task)
    clf, scaler, split = pipeline.train_from_pairs(
        pairs,
        task,
        rt_resources=rt,
        seed=args.seed,
        n_epochs=args.epochs,
        learning_rate=args.learning_rate,
        kernel=args.kernel,
        augment_instances=not args.no_augment,
    )
    pipeline.save_bundle(args.out, clf, scaler, rt.stopwords)
    print(f"model\t{args.out}")
    for name, X, y in (
        ("train", split.X_train, split.y_train),
        ("valid", split.X_valid, split.y_valid),
        ("test", split.X_test, split.y_test),
    ):
        if len(X) == 0:
            continue
        metrics, _ = evaluation.classification_metrics(
            y.tolist(), clf.predict(X).tolist(), classes=list(range(len(clf.classes_)))
        )
        for key, value in metrics.items():
            print(f"{name}_{key}\t{_fmt(value)}")
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    gold = load_benchmark(args.gold)
    pred = load_benchmark(args.pred)
    scores = evaluation.evaluate_alignment(gold, pred, typed=not args.untyped)
    for key, value in scores.items():
        print(f"{key}\t{_fmt(value)}")
    gold_labels, pred_labels = [], []
    for g, p in zip(gold, pred):
        g_map = {(l.source, l.target): l.relation for l in g.links}
        p_map = {(l.source, l.target): l.relation for l in p.links}
        for i in range(g.n_left):
            for j in range(g.n_right):
                gold_labels.append(g_map.get((i, j), SemanticRelation.NONE).value)
                pred_labels.append(p_map.get((i, j), SemanticRelation.NONE).value)
    if gold_labels:
        metrics, confusion = evaluation.classification_metrics(
            gold_labels, pred_labels, classes=[r.value for r in ALL_RELATIONS]
        )
        for key, value in metrics.items():
            print(f"label_{key}\t{_fmt(value)}")
        if args.confusion:
            header = "\t".join(c for c in confusion.classes)
            print(f"gold\\pred\t{header}")
            for cls, row in zip(confusion.classes, confusion.counts):
                print(cls + "\t" + "\t".join(str(int(x)) for x in row))
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    pairs = load_benchmark(args.benchmark)
    stats = netstats.alignment_stats(pairs)
    rows = [
        ("entries", stats.n_entries),
        ("left_senses", stats.n_left),
        ("right_senses", stats.n_right),
        ("links", stats.n_links),
        ("mean_degree_left", _fmt(stats.mean_degree_left)),
        ("mean_degree_right", _fmt(stats.mean_degree_right)),
        ("mean_degree", _fmt(stats.mean_degree)),
        ("density", _fmt(stats.density)),
    ]
    for rel in ALL_RELATIONS:
        rows.append((rel.value, stats.histogram[rel.value]))
    rows.append(("all_skos", stats.histogram["all"]))
    for key, value in rows:
        print(f"{key}\t{value}")
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow([k for k, _ in rows])
            writer.writerow([v for _, v in rows])
        print(f"csv\t{args.out}")
    return 0


def cmd_infer_translations(args: argparse.Namespace) -> int:
    edges = load_translation_pairs(args.manifest)
    graph = translation.TranslationGraph.from_edges(edges)
    if args.mode == "cycle":
        inferred = translation.infer_cycles(graph, args.source_lang, args.target_lang)
    else:
        inferred = translation.infer_paths(
            graph, args.source_lang, args.target_lang, alpha=args.alpha, max_len=args.max_len
        )
    print(f"inferred\t{len(inferred)} pairs")
    if args.out:
        translation.write_lexicon(inferred, args.out)
        print(f"lexicon\t{args.out}")
    if args.gold:
        gold = translation.load_gold_lexicon(args.gold)
        thresholds = [float(t) for t in args.thresholds.split(",")] if args.thresholds else [0.0]
        for row in translation.threshold_sweep(inferred, gold, thresholds):
            print(
                "\t".join(
                    [
                        f"threshold={row['threshold']:g}",
                        f"precision={_fmt(row['precision'])}",
                        f"recall={_fmt(row['recall'])}",
                        f"f1={_fmt(row['f1'])}",
                        f"coverage={_fmt(row['coverage'])}",
                    ]
                )
            )
    return 0


def cmd_iaa(args: argparse.Namespace) -> int:
    annotators = [load_benchmark(path) for path in args.annotations]
    table = evaluation.agreement_table_from_annotations(annotators)
    alpha = evaluation.krippendorff_alpha(table)
    print(f"alpha\t{_fmt(alpha)}")
    if args.binary:
        binary_table = [
            [None if v is None else ("link" if v != "none" else "none") for v in row]
            for row in table
        ]
        print(f"alpha_binary\t{_fmt(evaluation.krippendorff_alpha(binary_table))}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    pairs = load_benchmark(args.benchmark)
    app = create_app(pairs, annotation_path=args.annotations_out)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sensealign", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("align", help="align two dictionaries or re-align a benchmark")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--benchmark", help="benchmark JSON whose inventories are re-aligned")
    group.add_argument("--left", help="left dictionary TSV")
    p.add_argument("--right", help="right dictionary TSV")
    p.add_argument("--config", help="pipeline config JSON")
    p.add_argument("--out", required=True, help="output benchmark JSON")
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("train", help="train a relation classifier bundle")
    p.add_argument("--benchmark", nargs="+", required=True)
    p.add_argument("--task", choices=[t.value for t in Task], default=Task.SKOS_PLUS_NONE.value)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epochs", type=int, default=50)
    p.add_argument("--learning-rate", type=float, default=0.1)
    p.add_argument("--kernel", choices=["linear", "rbf", "poly"], default="linear")
    p.add_argument("--embeddings")
    p.add_argument("--relations")
    p.add_argument("--stopwords")
    p.add_argument("--no-augment", action="store_true")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="score a prediction against gold")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument("--untyped", action="store_true", help="ignore relation labels")
    p.add_argument("--confusion", action="store_true", help="print the confusion matrix")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("stats", help="alignment statistics of a benchmark")
    p.add_argument("--benchmark", required=True)
    p.add_argument("--out", help="also write one-row CSV")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("infer-translations", help="infer translation pairs over a graph")
    p.add_argument("--manifest", required=True)
    p.add_argument("--source-lang", required=True)
    p.add_argument("--target-lang", required=True)
    p.add_argument("--mode", choices=["path", "cycle"], default="path")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--max-len", type=int, default=8)
    p.add_argument("--out")
    p.add_argument("--gold")
    p.add_argument("--thresholds", help="comma separated weight thresholds")
    p.set_defaults(func=cmd_infer_translations)

    p = sub.add_parser("iaa", help="inter-annotator agreement over annotation files")
    p.add_argument("--annotations", nargs="+", required=True)
    p.add_argument("--binary", action="store_true", help="also report link/none agreement")
    p.set_defaults(func=cmd_iaa)

    p = sub.add_parser("serve", help="run the curation HTTP service")
    p.add_argument("--benchmark", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--annotations-out", help="persist decisions to this JSON file")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "align" and not args.benchmark and not args.right:
        parser.error("align needs --right together with --left")
    try:
        return args.func(args)
    except SenseAlignError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
