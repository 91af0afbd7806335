"""Command-line entry point wiring the full pipeline.

Subcommands: annotate, build-corpus, classify, evaluate, export-finetune,
correlate, stats. Every artifact-writing command also writes a manifest
holding the config digest, the seeds, and the input file digests, so two
runs with equal digests are byte-identical when using the offline judge
or a static backend.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import __version__
from .align import (
    OfflineJaccardJudge,
    RemoteJudge,
    annotate_all,
    format_summary,
    load_annotations,
    write_annotations,
    write_summary_tsv,
)
from .cache import VerdictCache
from .chat import HttpChatBackend, StaticChatBackend
from .classifiers import (
    ClassifyRequest,
    export_finetune,
    few_shot_classify,
    hybrid_classify,
    kb_classify,
    predict_prototype,
    sample_shots,
    train_prototype,
    zero_shot_classify,
)
from .config import Config, ConfigError, load_config, sha256_file
from .embeddings import (
    HashedEmbeddingProvider,
    HttpEmbeddingProvider,
    PrecomputedEmbeddings,
)
from .errors import LexiLevelError, MissingFile
from .evp import build_kb, load_evp, load_report
from .metrics import (
    adjacent_accuracy,
    confusion,
    correlate_complex,
    load_predictions,
    read_complex,
    score,
    split_examples,
    write_confusion_tsv,
    write_report_json,
)
from .semcor import (
    build_corpus,
    corpus_stats,
    evp_examples_to_corpus,
    load_corpus,
    load_semcor,
    write_corpus,
)
from .wordnet import load_wordnet

METHODS = ("kb", "zero-shot", "few-shot", "hybrid", "prototype")
TRAIN_SOURCES = ("evp", "semcor_cefr", "mixture")


def _require_file(path: str | None, label: str) -> str:
    if not path or not os.path.isfile(path):
        raise MissingFile(f"{label}: {path}")
    return path


def _require_dir(path: str | None, label: str) -> str:
    if not path or not os.path.isdir(path):
        raise MissingFile(f"{label}: {path}")
    return path


def _emit(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True))


def _write_manifest(config: Config, command: str, inputs: dict[str, str], name: str) -> None:
    manifest = {
        "command": command,
        "config_digest": config.digest,
        "seeds": config.seeds,
        "inputs": {label: sha256_file(path) for label, path in sorted(inputs.items())},
        "version": __version__,
    }
    with open(os.path.join(config.output_dir, name), "w", encoding="utf-8") as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write("\n")


def _wordnet_input_files(directory: str) -> dict[str, str]:
    names = [f"{kind}.{suffix}" for kind in ("index", "data") for suffix in ("noun", "verb", "adj", "adv")]
    names.append("index.sense")
    return {name: os.path.join(directory, name) for name in names}


def _make_backend(config: Config, *, force_zero_temperature: bool = False):
    if config.backend_kind == "static":
        return StaticChatBackend(reply=config.static_reply)
    if config.backend_kind != "http":
        raise ConfigError(f"unknown backend.kind {config.backend_kind!r}")
    if not config.base_url or not config.model:
        raise ConfigError("backend.base_url and backend.model are required")
    return HttpChatBackend(
        base_url=config.base_url,
        model=config.model,
        api_key_env=config.api_key_env,
        temperature=0.0 if force_zero_temperature else config.temperature,
        reasoning_effort=config.reasoning_effort,
        max_retries=config.retry_budget,
    )


def _make_provider(config: Config):
    if config.emb_kind == "hashed":
        return HashedEmbeddingProvider(dimension=config.emb_dimension)
    if config.emb_kind == "tsv":
        return PrecomputedEmbeddings.load(_require_file(config.emb_tsv, "embeddings.tsv"))
    if config.emb_kind == "http":
        if not config.emb_url:
            raise ConfigError("embeddings.url is required for the http provider")
        return HttpEmbeddingProvider(url=config.emb_url)
    raise ConfigError(f"unknown embeddings.kind {config.emb_kind!r}")


def _evp_example_split(config: Config):
    lexicon = load_evp(_require_file(config.evp_tsv, "paths.evp_tsv"))
    examples, _skipped = evp_examples_to_corpus(lexicon)
    return split_examples(examples, test_fraction=0.1, seed=config.split_seed)


def _training_examples(config: Config, source: str):
    if source == "evp":
        return _evp_example_split(config).train
    if source == "semcor_cefr":
        return load_corpus(_require_file(config.corpus, "paths.corpus"))
    if source == "mixture":
        return _evp_example_split(config).train + load_corpus(
            _require_file(config.corpus, "paths.corpus")
        )
    raise ConfigError(f"unknown training source {source!r}")


def _make_classifier(config: Config, method: str, *, shots_k: int, train_source: str):
    """Build a total classifier callable for evaluate/correlate/classify."""
    if method == "kb":
        kb = build_kb(load_evp(_require_file(config.evp_tsv, "paths.evp_tsv")))

        def classify_kb(request: ClassifyRequest):
            prediction = kb_classify(request, kb)
            if prediction is None:
                raise LexiLevelError(f"word {request.word!r} not in knowledge base")
            return prediction

        return classify_kb
    if method == "zero-shot":
        backend = _make_backend(config)
        return lambda request: zero_shot_classify(request, backend)
    if method == "few-shot":
        backend = _make_backend(config)
        train = _training_examples(config, train_source)
        shots = sample_shots(train, shots_k, config.shot_seed)
        return lambda request: few_shot_classify(request, shots, backend)
    if method == "hybrid":
        kb = build_kb(load_evp(_require_file(config.evp_tsv, "paths.evp_tsv")))
        backend = _make_backend(config)
        fallback = lambda request: zero_shot_classify(request, backend)  # noqa: E731
        return lambda request: hybrid_classify(request, kb, fallback)
    if method == "prototype":
        provider = _make_provider(config)
        train = _training_examples(config, train_source)
        model = train_prototype(train, provider)
        return lambda request: predict_prototype(model, request, provider)
    raise ConfigError(f"unknown method {method!r}")


def cmd_annotate(args: argparse.Namespace) -> int:
    config = _load(args)
    wordnet_dir = _require_dir(config.wordnet_dir, "paths.wordnet_dir")
    evp_tsv = _require_file(config.evp_tsv, "paths.evp_tsv")
    store = load_wordnet(wordnet_dir)
    lexicon = load_evp(evp_tsv)
    if args.offline_judge:
        judge = OfflineJaccardJudge()
    else:
        # The similarity judge always runs at temperature zero.
        judge = RemoteJudge(backend=_make_backend(config, force_zero_temperature=True))
    cache = VerdictCache.open(config.cache_file) if config.cache_file else VerdictCache()
    lenient = config.lenient or args.lenient
    annotated = annotate_all(
        lexicon,
        store,
        judge,
        cache,
        parallelism=config.parallelism,
        retry_budget=config.retry_budget,
        lenient=lenient,
    )
    os.makedirs(config.output_dir, exist_ok=True)
    write_annotations(annotated, os.path.join(config.output_dir, "annotated_wordnet.jsonl"))
    write_summary_tsv(annotated, os.path.join(config.output_dir, "summary.tsv"))
    inputs = {"evp_tsv": evp_tsv, **_wordnet_input_files(wordnet_dir)}
    _write_manifest(config, "annotate", inputs, "annotate_manifest.json")
    print(format_summary(annotated), end="")
    _emit(
        {
            "command": "annotate",
            "pairs_judged": cache.hits + cache.misses,
            "backend_calls": cache.misses,
            "cache_hits": cache.hits,
            "annotations": annotated.annotation_count,
            "provenance_records": annotated.provenance_count,
            "senses": annotated.sense_count,
            "lemmas": annotated.lemma_count,
        }
    )
    return 0


def cmd_build_corpus(args: argparse.Namespace) -> int:
    config = _load(args)
    xml_path = _require_file(config.semcor_xml, "paths.semcor_xml")
    keys_path = _require_file(config.semcor_keys, "paths.semcor_keys")
    annotations_path = _require_file(config.annotations, "paths.annotations")
    loaded = load_semcor(xml_path, keys_path)
    annotated = load_annotations(annotations_path)
    corpus = build_corpus(loaded.instances, annotated)
    os.makedirs(config.output_dir, exist_ok=True)
    os.makedirs(os.path.dirname(config.corpus) or ".", exist_ok=True)
    write_corpus(corpus, config.corpus)
    stats = corpus_stats(corpus)
    with open(os.path.join(config.output_dir, "stats.tsv"), "w", encoding="utf-8") as handle:
        handle.write(stats.to_tsv())
    inputs = {"semcor_xml": xml_path, "semcor_keys": keys_path, "annotations": annotations_path}
    _write_manifest(config, "build-corpus", inputs, "corpus_manifest.json")
    print(stats.to_tsv(), end="")
    _emit(
        {
            "command": "build-corpus",
            "instances": len(loaded.instances),
            "mwe_skipped": loaded.mwe_skipped,
            "multi_key": loaded.multi_key,
            "examples": len(corpus),
        }
    )
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    config = _load(args)
    classifier = _make_classifier(
        config, args.method, shots_k=args.shots, train_source=args.train_source
    )
    request = ClassifyRequest(word=args.word, sentence=args.sentence)
    prediction = classifier(request)
    payload = {
        "word": args.word,
        "level": prediction.level.name,
        "route": prediction.route,
    }
    if request.warning:
        payload["warning"] = "target word does not occur in the sentence"
    _emit(payload)
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    config = _load(args)
    inputs: dict[str, str] = {}
    split_manifest = None
    if args.predictions:
        predictions_path = _require_file(args.predictions, "predictions")
        gold, pred = load_predictions(predictions_path)
        inputs["predictions"] = predictions_path
    elif args.method:
        split = _evp_example_split(config)
        split_manifest = split.manifest
        classifier = _make_classifier(
            config, args.method, shots_k=args.shots, train_source=args.train_source
        )
        gold = [example.level for example in split.test]
        pred = [
            classifier(ClassifyRequest(word=example.word, sentence=example.sentence)).level
            for example in split.test
        ]
        inputs["evp_tsv"] = _require_file(config.evp_tsv, "paths.evp_tsv")
    else:
        raise ConfigError("evaluate needs --predictions FILE or --method METHOD")
    report = score(gold, pred)
    matrix = confusion(gold, pred)
    os.makedirs(config.output_dir, exist_ok=True)
    if split_manifest is not None:
        with open(
            os.path.join(config.output_dir, "split_manifest.json"), "w", encoding="utf-8"
        ) as handle:
            json.dump(split_manifest, handle, indent=2, sort_keys=True)
            handle.write("\n")
    write_report_json(report, matrix, os.path.join(config.output_dir, "report.json"))
    write_confusion_tsv(matrix, os.path.join(config.output_dir, "confusion.tsv"))
    _write_manifest(config, "evaluate", inputs, "evaluate_manifest.json")
    _emit(
        {
            "command": "evaluate",
            "n": len(gold),
            "macro_f1": report.macro_f1,
            "micro_f1": report.micro_f1,
            "adjacent_accuracy": adjacent_accuracy(gold, pred),
            "zero_support": [level.name for level in report.zero_support],
        }
    )
    return 0


def cmd_export_finetune(args: argparse.Namespace) -> int:
    config = _load(args)
    train = _training_examples(config, args.train_source)
    total = export_finetune(
        train, config.output_dir, seed=config.split_seed, preset=args.train_source
    )
    inputs = {}
    if args.train_source in ("evp", "mixture"):
        inputs["evp_tsv"] = _require_file(config.evp_tsv, "paths.evp_tsv")
    if args.train_source in ("semcor_cefr", "mixture"):
        inputs["corpus"] = _require_file(config.corpus, "paths.corpus")
    _write_manifest(config, "export-finetune", inputs, "export_manifest.json")
    n_valid = math.ceil(total * 0.1) if total else 0
    _emit(
        {
            "command": "export-finetune",
            "records": total,
            "n_train": total - n_valid,
            "n_valid": n_valid,
        }
    )
    return 0


def cmd_correlate(args: argparse.Namespace) -> int:
    config = _load(args)
    complex_tsv = _require_file(config.complex_tsv, "paths.complex_tsv")
    records = read_complex(complex_tsv)
    classifier = _make_classifier(
        config, args.method, shots_k=args.shots, train_source=args.train_source
    )

    def classify(word: str, sentence: str):
        return classifier(ClassifyRequest(word=word, sentence=sentence)).level

    report = correlate_complex(classify, records)
    os.makedirs(config.output_dir, exist_ok=True)
    payload = {
        "command": "correlate",
        "method": args.method,
        "n": report.n,
        "overall": report.overall,
        "per_genre": report.per_genre,
    }
    with open(os.path.join(config.output_dir, "correlation.json"), "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")
    _write_manifest(config, "correlate", {"complex_tsv": complex_tsv}, "correlate_manifest.json")
    _emit(payload)
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    config = _load(args)
    payload: dict = {"command": "stats"}
    if config.evp_tsv and os.path.isfile(config.evp_tsv):
        payload["evp"] = load_report(load_evp(config.evp_tsv))
    if os.path.isfile(config.corpus):
        stats = corpus_stats(load_corpus(config.corpus))
        payload["corpus"] = {
            "types": {level.name: n for level, n in stats.types.items()},
            "words": {level.name: n for level, n in stats.words.items()},
            "total_types": stats.total_types,
            "total_words": stats.total_words,
        }
    if os.path.isfile(config.annotations):
        annotated = load_annotations(config.annotations)
        payload["annotations"] = {
            "annotations": annotated.annotation_count,
            "senses": annotated.sense_count,
            "lemmas": annotated.lemma_count,
        }
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def _load(args: argparse.Namespace) -> Config:
    config = load_config(args.config)
    if args.seed is not None:
        config.split_seed = args.seed
        config.shot_seed = args.seed
    return config


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lexilevel",
        description="CEFR-level annotation of WordNet senses and contextual level classifiers",
    )
    parser.add_argument("--version", action="version", version=f"lexilevel {__version__}")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    def common(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--config", required=True, help="path to the INI config file")
        sub.add_argument("--seed", type=int, default=None, help="override split and shot seeds")

    def method_options(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--method", choices=METHODS, help="classifier route")
        sub.add_argument("--shots", type=int, default=1, help="examples per level for few-shot")
        sub.add_argument(
            "--train-source",
            choices=TRAIN_SOURCES,
            default="evp",
            help="training data for few-shot/prototype",
        )

    sub = subparsers.add_parser("annotate", help="align glosses and transfer CEFR levels")
    common(sub)
    sub.add_argument("--offline-judge", action="store_true", help="use the lexical-overlap judge")
    sub.add_argument("--lenient", action="store_true", help="degrade unparseable verdicts to mismatches")
    sub.set_defaults(func=cmd_annotate)

    sub = subparsers.add_parser("build-corpus", help="join SemCor onto the annotations")
    common(sub)
    sub.set_defaults(func=cmd_build_corpus)

    sub = subparsers.add_parser("classify", help="predict the level of a word in a sentence")
    common(sub)
    sub.add_argument("word")
    sub.add_argument("sentence")
    method_options(sub)
    sub.set_defaults(func=cmd_classify, require_method=True)

    sub = subparsers.add_parser("evaluate", help="score predictions or a classifier")
    common(sub)
    sub.add_argument("--predictions", help="TSV of gold<TAB>pred level tokens")
    method_options(sub)
    sub.set_defaults(func=cmd_evaluate)

    sub = subparsers.add_parser("export-finetune", help="write fine-tuning JSONL files")
    common(sub)
    sub.add_argument(
        "--train-source", choices=TRAIN_SOURCES, default="evp", help="dataset to export"
    )
    sub.set_defaults(func=cmd_export_finetune)

    sub = subparsers.add_parser("correlate", help="correlate predictions with complexity scores")
    common(sub)
    method_options(sub)
    sub.set_defaults(func=cmd_correlate, require_method=True)

    sub = subparsers.add_parser("stats", help="print resource and artifact statistics")
    common(sub)
    sub.set_defaults(func=cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "require_method", False) and not args.method:
        parser.error(f"{args.subcommand} requires --method")
    try:
        return args.func(args)
    except (LexiLevelError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
