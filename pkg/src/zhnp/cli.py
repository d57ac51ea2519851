"""Command-line pipeline: align -> extract -> match -> annotate -> stats /
split -> train -> predict -> evaluate, plus the context sweep, assessment
scoring and the annotation service.

Every stage consumes and produces only the documented line formats, writes a
sidecar {out}.meta.json echoing its command, seed and flags, and is
deterministic given identical inputs and seed. Report-producing commands
optionally render matplotlib figures next to their delimited output
(--figures).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import align as aligner
from . import analysis, matching, metrics, models, projection, trees
from .corpus import (
    NPSpan,
    read_corpus,
    read_dataset,
    read_records,
    write_dataset,
)
from .hashing import stable_fraction


def _write_meta(out_path, command: str, options: dict) -> None:
    meta = {"tool": "zhnp", "command": command, "options": options}
    with open(f"{out_path}.meta.json", "w", encoding="utf-8") as f:
        json.dump(meta, f, ensure_ascii=False, indent=2, sort_keys=True)
        f.write("\n")


def _span_to_json(span: NPSpan) -> dict:
    return {
        "start": span.start,
        "end": span.end,
        "head": span.head,
        "node_path": list(span.node_path),
        "is_pronoun": span.is_pronoun,
        "is_conjunction": span.is_conjunction,
        "is_proper": span.is_proper,
    }


def _span_from_json(obj: dict, side: str) -> NPSpan:
    return NPSpan(
        side=side,
        start=obj["start"],
        end=obj["end"],
        head=obj["head"],
        node_path=tuple(obj.get("node_path", ())),
        is_pronoun=obj.get("is_pronoun", False),
        is_conjunction=obj.get("is_conjunction", False),
        is_proper=obj.get("is_proper", False),
    )


def _sentence_nps(sent):
    en = trees.extract_nps(trees.parse_tree(sent.en_tree), sent.en_pos, "en")
    zh = trees.extract_nps(trees.parse_tree(sent.zh_tree), sent.zh_pos, "zh")
    return en, zh


def _load_nps_file(path) -> dict:
    out = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            out[obj["sent_id"]] = (
                [_span_from_json(s, "en") for s in obj["en"]],
                [_span_from_json(s, "zh") for s in obj["zh"]],
            )
    return out


def _load_matches_file(path) -> dict:
    """Match debug lines grouped by sentence id."""
    out = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            match = matching.NPMatch(
                en_span=_span_from_json(obj["en"], "en"),
                zh_span=_span_from_json(obj["zh"], "zh"),
                overlap_e2z=obj["overlap_e2z"],
                overlap_z2e=obj["overlap_z2e"],
                tie_flag=obj["tie_flag"],
            )
            out.setdefault(obj["sent_id"], []).append(match)
    return out


# ---------------------------------------------------------------- align


def cmd_align(args) -> int:
    corpus = list(read_corpus(args.corpus))
    if args.alignments_e2z or args.alignments_z2e:
        if not (args.alignments_e2z and args.alignments_z2e):
            print("error: importing alignments requires both directions", file=sys.stderr)
            return 1
        sets_e2z = list(aligner.read_pharaoh_file(args.alignments_e2z, corpus, "e2z"))
        sets_z2e = list(aligner.read_pharaoh_file(args.alignments_z2e, corpus, "z2e"))
    else:
        diag = aligner.AlignDiagnostics()
        sets_e2z, sets_z2e = [], []
        for direction, sink in (("e2z", sets_e2z), ("z2e", sets_z2e)):
            table = aligner.train_model1(corpus, direction, args.iterations, args.seed)
            for pair in corpus:
                sink.append(aligner.viterbi_align(table, pair, diag))
            if args.table_out:
                aligner.write_table(table, f"{args.table_out}.{direction}")
            print(
                f"{direction}: log-likelihood {table.ll_history[0]:.2f} -> "
                f"{table.ll_history[-1]:.2f} over {args.iterations} iterations"
                + (f", {table.skipped} pairs skipped" if table.skipped else "")
            )
        if diag.oov_targets:
            print(f"decode: {diag.oov_targets} OOV target words linked to NULL")
    for path, sets in ((args.out_e2z, sets_e2z), (args.out_z2e, sets_z2e)):
        with open(path, "w", encoding="utf-8") as f:
            for aset in sets:
                f.write(aligner.format_pharaoh(aset) + "\n")
        _write_meta(path, "align", {
            "corpus": args.corpus, "iterations": args.iterations, "seed": args.seed,
            "imported": bool(args.alignments_e2z),
        })
    print(f"aligned {len(corpus)} sentence pairs")
    return 0


# ---------------------------------------------------------------- extract


def cmd_extract(args) -> int:
    n_sent = n_nps = 0
    with open(args.out, "w", encoding="utf-8") as f:
        for sent in read_corpus(args.corpus):
            en, zh = _sentence_nps(sent)
            obj = {
                "sent_id": sent.id,
                "en": [_span_to_json(s) for s in en],
                "zh": [_span_to_json(s) for s in zh],
            }
            f.write(json.dumps(obj, ensure_ascii=False) + "\n")
            n_sent += 1
            n_nps += len(en) + len(zh)
    _write_meta(args.out, "extract", {"corpus": args.corpus})
    print(f"extracted {n_nps} NP spans from {n_sent} sentences")
    return 0


# ---------------------------------------------------------------- match


def cmd_match(args) -> int:
    corpus = list(read_corpus(args.corpus))
    nps = _load_nps_file(args.nps) if args.nps else None
    sets_e2z = list(aligner.read_pharaoh_file(args.alignments_e2z, corpus, "e2z"))
    sets_z2e = list(aligner.read_pharaoh_file(args.alignments_z2e, corpus, "z2e"))
    n_matches = 0
    with open(args.out, "w", encoding="utf-8") as f:
        for sent, a_e2z, a_z2e in zip(corpus, sets_e2z, sets_z2e):
            en, zh = nps[sent.id] if nps else _sentence_nps(sent)
            matches = matching.match_sentence_pair(
                en, zh, a_e2z, a_z2e, filtered=not args.no_filter
            )
            for m in matches:
                obj = {"sent_id": sent.id}
                obj.update(m.to_json())
                f.write(json.dumps(obj, ensure_ascii=False) + "\n")
            n_matches += len(matches)
    _write_meta(args.out, "match", {
        "corpus": args.corpus, "nps": args.nps,
        "alignments_e2z": args.alignments_e2z, "alignments_z2e": args.alignments_z2e,
        "filtered": not args.no_filter,
    })
    print(f"matched {n_matches} NP pairs in {len(corpus)} sentences")
    return 0


# ---------------------------------------------------------------- annotate


def cmd_annotate(args) -> int:
    matches_by_sent = _load_matches_file(args.matches)
    pronoun_excl = analysis.MEN_PRONOUN_EXCLUSIONS
    lexical_excl = analysis.MEN_LEXICAL_EXCLUSIONS
    if args.men_exclusions:
        words = analysis.load_word_list(args.men_exclusions)
        pronoun_excl, lexical_excl = words, ()
    config = projection.ProjectionConfig(possessive_definite=args.possessive_definite)
    if args.number_lexicon:
        config.lexicon = projection.NumberLexicon.from_file(args.number_lexicon)
    records = []
    sampled_out = 0
    for sent in read_corpus(args.corpus):
        if args.sample_rate < 1.0 and stable_fraction(args.seed, sent.id) >= args.sample_rate:
            sampled_out += 1
            continue
        for match in sorted(
            matches_by_sent.get(sent.id, ()),
            key=lambda m: (m.zh_span.start, m.zh_span.end),
        ):
            record = projection.project(match, sent, config)
            records.append(
                analysis.annotate_record(record, sent, pronoun_excl, lexical_excl)
            )
    count = write_dataset(records, args.out)
    _write_meta(args.out, "annotate", {
        "corpus": args.corpus, "matches": args.matches, "seed": args.seed,
        "sample_rate": args.sample_rate,
        "possessive_definite": args.possessive_definite,
    })
    print(f"annotated {count} NPs" + (f" ({sampled_out} sentences sampled out)" if sampled_out else ""))
    return 0


# ---------------------------------------------------------------- stats


def cmd_stats(args) -> int:
    stats = analysis.corpus_stats(read_dataset(args.dataset))
    with open(args.out, "w", encoding="utf-8") as f:
        json.dump(stats.to_json(), f, ensure_ascii=False, indent=2)
        f.write("\n")
    _write_meta(args.out, "stats", {"dataset": args.dataset})
    if args.figures:
        from . import report

        report.fig_label_distribution(stats, f"{args.out}.labels.png")
    def fmt(rate):
        return f"{100 * rate:.2f}%" if rate is not None else "n/a"
    print(f"{stats.n_records} NPs in {stats.n_sentences} sentences")
    print(f"explicit plurality: {fmt(stats.explicit_plural_rate)} of NPs, "
          f"{fmt(stats.explicit_plural_sentence_rate)} of sentences")
    print(f"explicit definiteness: {fmt(stats.explicit_definite_rate)} of NPs, "
          f"{fmt(stats.explicit_definite_sentence_rate)} of sentences")
    print(f"men-suffix NPs: {stats.men_count} "
          f"(singular {fmt(stats.men_singular_rate)}, indefinite {fmt(stats.men_indefinite_rate)})")
    return 0


# ---------------------------------------------------------------- split


def cmd_split(args) -> int:
    ratios = analysis.parse_ratios(args.ratios)
    records = analysis.split_dataset(read_dataset(args.dataset), ratios, args.seed)
    write_dataset(records, args.out)
    _write_meta(args.out, "split", {
        "dataset": args.dataset, "ratios": args.ratios, "seed": args.seed,
    })
    sizes = {s: sum(1 for r in records if r.split == s) for s in ("train", "dev", "test")}
    print(f"split {len(records)} records: {sizes}")
    return 0


# ---------------------------------------------------------------- train


def _train_config(args) -> models.TrainConfig:
    return models.TrainConfig(
        learning_rate=args.lr,
        epochs=args.epochs,
        l2=args.l2,
        seed=args.seed,
        min_freq=args.min_freq,
        orders=tuple(int(n) for n in args.orders.split(",")),
    )


def cmd_train(args) -> int:
    index = models.CorpusIndex(read_corpus(args.corpus))
    records = [r for r in read_dataset(args.dataset) if r.split == args.split]
    if not records:
        print(f"error: no records in split {args.split!r}", file=sys.stderr)
        return 1
    instances = models.labeled_instances(records, index, args.k, args.task)
    model = models.train(instances, args.task, args.model_kind, _train_config(args))
    model.context_size = args.k
    model.save(args.out)
    _write_meta(args.out, "train", {
        "dataset": args.dataset, "corpus": args.corpus, "task": args.task,
        "model_kind": args.model_kind, "split": args.split, "k": args.k,
        "config": model.config.to_json(),
    })
    print(f"trained {args.model_kind} {args.task} model on {len(instances)} instances, "
          f"{len(model.vocab)} features")
    return 0


# ---------------------------------------------------------------- predict


def cmd_predict(args) -> int:
    model = models.LinearModel.load(args.model)
    index = models.CorpusIndex(read_corpus(args.corpus))
    records = [r for r in read_dataset(args.dataset) if r.split == args.split]
    instances = [models.build_context(r, index, model.context_size) for r in records]
    count = models.write_predictions(model, instances, args.out)
    _write_meta(args.out, "predict", {
        "model": args.model, "dataset": args.dataset, "split": args.split,
        "task": model.task, "k": model.context_size,
    })
    print(f"wrote {count} predictions for split {args.split!r}")
    return 0


# ---------------------------------------------------------------- evaluate


def _gold_labels(records, task):
    return {r.id: models.task_label(r, task) for r in records}


def _check_coverage(golds: dict, preds: dict):
    missing = sorted(set(golds) - set(preds))
    if missing:
        raise metrics.EvaluationError(
            f"{len(missing)} gold instances lack predictions, e.g. {missing[:5]}"
        )


def cmd_evaluate(args) -> int:
    records = [r for r in read_dataset(args.dataset) if r.split == args.split]
    if not records:
        print(f"error: no records in split {args.split!r}", file=sys.stderr)
        return 1
    try:
        if args.merge_binary:
            if not (args.plurality_preds and args.definiteness_preds):
                print("error: --merge-binary needs --plurality-preds and "
                      "--definiteness-preds", file=sys.stderr)
                return 1
            plur = metrics.import_predictions(args.plurality_preds, "plurality")
            defi = metrics.import_predictions(args.definiteness_preds, "definiteness")
            task = "fourway"
            golds = _gold_labels(records, task)
            _check_coverage(golds, plur.labels)
            _check_coverage(golds, defi.labels)
            preds = metrics.merge_binary(
                {i: plur.labels[i] for i in golds},
                {i: defi.labels[i] for i in golds},
            )
        else:
            if not args.preds:
                print("error: provide --preds (or --import) with a prediction file",
                      file=sys.stderr)
                return 1
            imported = metrics.import_predictions(args.preds, args.task)
            task = imported.task
            golds = _gold_labels(records, task)
            preds = imported.labels
        _check_coverage(golds, preds)
        ids = [r.id for r in records]
        gold_seq = [golds[i] for i in ids]
        pred_seq = [preds[i] for i in ids]
        classes = metrics.TASK_CLASSES[task]
        matrix = metrics.confusion(gold_seq, pred_seq, classes)
        result = metrics.metric_report(matrix)
        result["task"] = task
        result["split"] = args.split
        if args.merge_binary:
            result["merged_binary"] = True
            for dim in ("plurality", "definiteness"):
                result[f"marginal_{dim}"] = metrics.metric_report(
                    metrics.marginalize(matrix, dim)
                )
        if args.subset:
            if task == "fourway":
                print("error: --subset applies to binary tasks only", file=sys.stderr)
                return 1
            flag = "explicit_plural" if task == "plurality" else "explicit_definite"
            mask = [getattr(r, flag) for r in records]
            result["subsets"] = metrics.subset_eval(gold_seq, pred_seq, mask, classes)
            if args.subset in ("explicit", "implicit"):
                result["subset_selected"] = args.subset
    except metrics.EvaluationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    with open(args.out, "w", encoding="utf-8") as f:
        json.dump(result, f, ensure_ascii=False, indent=2)
        f.write("\n")
    _write_meta(args.out, "evaluate", {
        "dataset": args.dataset, "split": args.split, "task": task,
        "merge_binary": args.merge_binary, "subset": args.subset,
    })
    with open(f"{args.out}.confusion.csv", "w", encoding="utf-8") as f:
        f.write(matrix.to_csv())
    if args.figures:
        from . import report

        report.fig_confusion(matrix, f"{args.out}.confusion.png")
        if args.subset and result.get("subsets"):
            report.fig_subset_compare(result["subsets"], f"{args.out}.subsets.png")
    macro, weighted = result["macro"], result["weighted"]
    print(f"{task} on {args.split}: n={result['n']}")
    print(f"  macro    P={macro['precision']:.4f} R={macro['recall']:.4f} F={macro['f1']:.4f}")
    print(f"  weighted P={weighted['precision']:.4f} R={weighted['recall']:.4f} F={weighted['f1']:.4f}")
    return 0


# ---------------------------------------------------------------- context-sweep


def cmd_context_sweep(args) -> int:
    index = models.CorpusIndex(read_corpus(args.corpus))
    records = list(read_dataset(args.dataset))
    train_records = [r for r in records if r.split == "train"]
    eval_records = [r for r in records if r.split == args.split]
    if not train_records or not eval_records:
        print("error: dataset needs populated train and evaluation splits",
              file=sys.stderr)
        return 1
    config = _train_config(args)
    rows = []
    for k in range(args.k_max + 1):
        train_instances = models.labeled_instances(train_records, index, k, args.task)
        model = models.train(train_instances, args.task, args.model_kind, config)
        golds, preds = [], []
        for record in eval_records:
            inst = models.build_context(record, index, k)
            label, _ = models.predict(model, inst)
            golds.append(models.task_label(record, args.task))
            preds.append(label)
        matrix = metrics.confusion(golds, preds, metrics.TASK_CLASSES[args.task])
        mp, mr, mf = metrics.prf(matrix, "macro")
        wp, wr, wf = metrics.prf(matrix, "weighted")
        rows.append({
            "k": k, "n": matrix.total,
            "macro_p": mp, "macro_r": mr, "macro_f1": mf,
            "weighted_p": wp, "weighted_r": wr, "weighted_f1": wf,
        })
        print(f"k={k}: weighted F1 {wf:.4f}, macro F1 {mf:.4f} (n={matrix.total})")
    columns = ["k", "n", "macro_p", "macro_r", "macro_f1",
               "weighted_p", "weighted_r", "weighted_f1"]
    with open(args.out, "w", encoding="utf-8") as f:
        f.write("\t".join(columns) + "\n")
        for row in rows:
            f.write("\t".join(
                str(row[c]) if c in ("k", "n") else f"{row[c]:.6f}" for c in columns
            ) + "\n")
    _write_meta(args.out, "context-sweep", {
        "dataset": args.dataset, "corpus": args.corpus, "task": args.task,
        "model_kind": args.model_kind, "k_max": args.k_max, "split": args.split,
        "config": config.to_json(),
    })
    if args.figures:
        from . import report

        report.fig_context_sweep(rows, f"{args.out}.png")
    return 0


# ---------------------------------------------------------------- assess-score


def cmd_assess_score(args) -> int:
    dataset = {r.id: r for r in read_dataset(args.dataset)}
    records = list(read_records(args.records))
    unknown = sorted({r.item_id for r in records} - set(dataset))
    if unknown:
        print(f"error: records reference unknown items, e.g. {unknown[:5]}",
              file=sys.stderr)
        return 1
    from . import agreement

    result = agreement.assessment_report(records, dataset)
    with open(args.out, "w", encoding="utf-8") as f:
        json.dump(result, f, ensure_ascii=False, indent=2)
        f.write("\n")
    _write_meta(args.out, "assess-score",
                {"records": args.records, "dataset": args.dataset})

    def cell(value):
        return f"{value:.4f}" if value is not None else "-"

    for protocol in ("A1", "A2"):
        if protocol not in result:
            continue
        print(f"{protocol}:")
        print(f"  {'dimension':<20} {'Acc=2':>8} {'Acc>=1':>8} {'IAA(%)':>8} {'IAA(k)':>8}")
        for dim, row in result[protocol].items():
            print(f"  {dim:<20} {cell(row['acc_2']):>8} {cell(row['acc_ge1']):>8} "
                  f"{cell(row['iaa_pct']):>8} {cell(row['iaa_kappa']):>8}")
    return 0


# ---------------------------------------------------------------- serve


def cmd_serve(args) -> int:
    from .service import SessionStore, serve_forever

    dataset = {r.id: r for r in read_dataset(args.dataset)}
    index = models.CorpusIndex(read_corpus(args.corpus))
    store = SessionStore(dataset, index, args.state_dir)
    serve_forever(store, host=args.host, port=args.serve_port)
    return 0


# ---------------------------------------------------------------- parser


def _add_train_options(p):
    p.add_argument("--task", choices=("plurality", "definiteness", "fourway"),
                   required=True)
    p.add_argument("--model-kind", choices=("logistic", "linear-svm"),
                   default="logistic")
    p.add_argument("--orders", default="1,2,3,4",
                   help="comma-separated n-gram orders (default 1,2,3,4)")
    p.add_argument("--min-freq", type=int, default=2)
    p.add_argument("--lr", type=float, default=0.5)
    p.add_argument("--epochs", type=int, default=300)
    p.add_argument("--l2", type=float, default=1e-4)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zhnp",
        description="Chinese NP plurality/definiteness corpus pipeline",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("align", help="train the built-in aligner or import Pharaoh files")
    p.add_argument("--corpus", required=True)
    p.add_argument("--iterations", type=int, default=15)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alignments-e2z", help="import instead of training")
    p.add_argument("--alignments-z2e")
    p.add_argument("--table-out", help="also dump translation tables to this prefix")
    p.add_argument("--out-e2z", required=True)
    p.add_argument("--out-z2e", required=True)
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("extract", help="extract NP spans from the parse trees")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("match", help="mutual-best NP matching over both directions")
    p.add_argument("--corpus", required=True)
    p.add_argument("--nps", help="extract output; recomputed from trees if omitted")
    p.add_argument("--alignments-e2z", required=True)
    p.add_argument("--alignments-z2e", required=True)
    p.add_argument("--no-filter", action="store_true",
                   help="skip conjunction/keep-maximal/pronoun post-processing")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("annotate", help="project labels and add explicitness flags")
    p.add_argument("--corpus", required=True)
    p.add_argument("--matches", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sample-rate", type=float, default=1.0,
                   help="keep this fraction of sentences, hashed by id")
    p.add_argument("--possessive-definite", action="store_true")
    p.add_argument("--number-lexicon", help="override the English number-word list")
    p.add_argument("--men-exclusions", help="word list replacing the 们 exclusions")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("stats", help="corpus statistics report")
    p.add_argument("--dataset", required=True)
    p.add_argument("--figures", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("split", help="assign train/dev/test splits")
    p.add_argument("--dataset", required=True)
    p.add_argument("--ratios", default="8:1:1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("train", help="train a context classifier")
    p.add_argument("--dataset", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--split", default="train")
    p.add_argument("--k", type=int, default=0, help="context sentences per side")
    _add_train_options(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="apply a trained model to a split")
    p.add_argument("--model", required=True)
    p.add_argument("--dataset", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--split", default="test")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", help="score predictions against the dataset")
    p.add_argument("--dataset", required=True)
    p.add_argument("--split", default="test")
    p.add_argument("--task", choices=("plurality", "definiteness", "fourway"))
    p.add_argument("--preds", "--import", dest="preds",
                   help="prediction file (own or externally produced)")
    p.add_argument("--merge-binary", action="store_true",
                   help="merge two binary prediction files into 4-way labels")
    p.add_argument("--plurality-preds")
    p.add_argument("--definiteness-preds")
    p.add_argument("--subset", choices=("explicit", "implicit", "both"),
                   help="also score explicit/implicit subsets")
    p.add_argument("--figures", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("context-sweep", help="train/evaluate across context sizes")
    p.add_argument("--dataset", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--split", default="test")
    p.add_argument("--k-max", type=int, required=True)
    _add_train_options(p)
    p.add_argument("--figures", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_context_sweep)

    p = sub.add_parser("assess-score", help="agreement report for assessment records")
    p.add_argument("--records", required=True)
    p.add_argument("--dataset", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_assess_score)

    p = sub.add_parser("serve", help="run the assessment HTTP service")
    p.add_argument("--dataset", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--state-dir", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--serve-port", type=int, default=8377)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
