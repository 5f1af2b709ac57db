"""
Main entry point for OTE-MTL
"""
import argparse
import json
import os
import sys
import traceback
from typing import List, Optional

import numpy as np

from otemtl.config.config import VARIANTS, Config, load_config
from otemtl.core.errors import (AlignmentError, CheckpointError, ConfigError, DatasetError,
                                EmbeddingError, ShapeError)
from otemtl.data.dataset import load_dataset, load_predictions, write_dataset
from otemtl.data.stats import split_stats
from otemtl.data.vocab import build_vocab, load_embeddings
from otemtl.decoding.predictor import predict
from otemtl.evaluation.errors import error_breakdown
from otemtl.evaluation.metrics import gold_by_id, score
from otemtl.evaluation.significance import compare_runs
from otemtl.model.checkpoint import load_checkpoint, save_checkpoint
from otemtl.reporters.html import HTMLReporter
from otemtl.reporters.text import format_metrics, format_runs, format_stats, stats_tsv
from otemtl.training.gradcheck import (GRADCHECK_TOLERANCE, micro_gradient_check,
                                       micro_hyperparams)
from otemtl.training.runner import load_run_f1s, multi_run
from otemtl.utils.logging import LOG_LEVEL_ENV, get_logger, setup_logging

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_CHECK_FAILED = 3

CHECKPOINT_FILE = "checkpoint.json"
TRAINLOG_FILE = "trainlog.json"
METRICS_FILE = "metrics.json"
PREDICTIONS_FILE = "predictions.jsonl"
RUNS_FILE = "runs.json"
RESOLVED_CONFIG_FILE = "resolved_config.json"
REPORT_FILE = "report.html"
STATS_FILE = "stats.tsv"
COMPARISON_FILE = "comparison.json"

DATA_ERRORS = (DatasetError, EmbeddingError, ShapeError, AlignmentError, CheckpointError, OSError)


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; usage errors here are status 1"""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_seeds(text: str) -> List[int]:
    """``"0,1,2"`` or ``"0-9"`` or a mix such as ``"0-2,7"``"""
    seeds: List[int] = []
    try:
        for part in filter(None, (p.strip() for p in text.split(","))):
            if "-" in part:
                low, high = (int(x) for x in part.split("-", 1))
                if low > high:
                    raise ValueError(part)
                seeds.extend(range(low, high + 1))
            else:
                seeds.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed list: {text!r}")
    if not seeds:
        raise argparse.ArgumentTypeError("seed list is empty")
    return seeds


def build_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("-c", "--config", help="Path to configuration file")
    common.add_argument("-o", "--out", help="Output directory")
    common.add_argument("--log-level", choices=["error", "warn", "info", "debug"],
                        help="Log level (default: OTE_LOG_LEVEL or config)")
    common.add_argument("--strict", action="store_true", default=None,
                        help="Fail on the first invalid dataset line")
    common.add_argument("--seed", type=parse_seeds, help="Seed list, e.g. 0-9 or 0,3,5")

    model = ArgumentParser(add_help=False)
    model.add_argument("--variant", choices=VARIANTS)
    model.add_argument("--alpha", type=float)
    model.add_argument("--gamma", type=float)
    model.add_argument("--lr", type=float, dest="learning_rate")
    model.add_argument("--batch-size", type=int)
    model.add_argument("--patience", type=int)
    model.add_argument("--max-epochs", type=int)

    parser = ArgumentParser(
        prog="otemtl",
        description="OTE-MTL - opinion triplet extraction with multi-task learning"
    )
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    train = commands.add_parser("train", parents=[common, model],
                                help="Train one model per seed and evaluate on the test split")
    train.add_argument("--train", help="Training split (JSON lines)")
    train.add_argument("--val", help="Validation split")
    train.add_argument("--test", help="Test split")
    train.add_argument("--embeddings", help="Pretrained vectors in text format")
    train.add_argument("-j", "--jobs", type=int, help="Number of parallel runs")
    train.add_argument("--html", action="store_true", default=None, help="Write report.html")

    predict_cmd = commands.add_parser("predict", parents=[common],
                                      help="Write predictions.jsonl for a dataset")
    predict_cmd.add_argument("--data", action="append", help="Dataset to predict")
    predict_cmd.add_argument("--checkpoint", help="Checkpoint file (default: OUT/checkpoint.json)")

    evaluate_cmd = commands.add_parser("eval", parents=[common],
                                       help="Score predictions against gold triplets")
    evaluate_cmd.add_argument("--gold", help="Gold dataset (default: data.test)")
    evaluate_cmd.add_argument("--pred", required=True, help="Prediction file")
    evaluate_cmd.add_argument("--html", action="store_true", default=None, help="Write report.html")

    stats = commands.add_parser("stats", parents=[common], help="Dataset statistics")
    stats.add_argument("--data", action="append", required=True, help="Dataset (repeatable)")

    # the micro model fixes every other hyperparameter
    gradcheck = commands.add_parser("gradcheck", parents=[common],
                                    help="Finite-difference check on a micro model")
    gradcheck.add_argument("--variant", choices=VARIANTS)
    gradcheck.add_argument("--l2-mode", choices=["squared", "norm"])

    compare = commands.add_parser("compare", parents=[common],
                                  help="Paired t-test between two runs.json files")
    compare.add_argument("--runs-a", required=True)
    compare.add_argument("--runs-b", required=True)
    return parser


_MODEL_FLAGS = ("variant", "alpha", "gamma", "learning_rate", "batch_size", "patience",
                "max_epochs", "l2_mode")


def resolve_config(args: argparse.Namespace) -> Config:
    """Defaults < bundled config.json < --config file < explicit flags"""
    cfg = load_config(args.config)
    for name in _MODEL_FLAGS:
        value = getattr(args, name, None)
        if value is not None:
            setattr(cfg.model, name, value)
    for name in ("train", "val", "test", "embeddings"):
        value = getattr(args, name, None)
        if value is not None:
            setattr(cfg.data, name, value)
    if args.strict is not None:
        cfg.data.strict = args.strict
    if args.seed is not None:
        cfg.training.seeds = args.seed
    if getattr(args, "jobs", None) is not None:
        cfg.training.jobs = args.jobs
    if args.out is not None:
        cfg.output.out_dir = args.out
    if getattr(args, "checkpoint", None) is not None:
        cfg.output.checkpoint = args.checkpoint
    if getattr(args, "html", None) is not None:
        cfg.output.html_report = args.html
    if args.log_level is not None:
        cfg.logging.log_level = args.log_level
    return cfg.validate()


def _out_path(cfg: Config, name: str) -> str:
    os.makedirs(cfg.output.out_dir, exist_ok=True)
    return os.path.join(cfg.output.out_dir, name)


def _write_json(path: str, data):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, sort_keys=True)
    logger.info(f"Wrote {path}")


def _require(value: Optional[str], flag: str) -> str:
    if not value:
        raise ConfigError(f"missing required input: pass {flag} or set it in the config file")
    return value


def cmd_train(cfg: Config) -> int:
    data = cfg.data
    train_records = load_dataset(_require(data.train, "--train"), data.strict)
    val_records = load_dataset(_require(data.val, "--val"), data.strict)
    test_records = load_dataset(_require(data.test, "--test"), data.strict)
    if not train_records:
        raise DatasetError("training split is empty", data.train)

    hyper = cfg.model
    seeds = cfg.training.seeds
    vocab = build_vocab(train_records, data.min_count)
    embeddings = None
    if data.embeddings:
        embeddings = load_embeddings(data.embeddings, vocab, hyper.d_e,
                                     rng=np.random.default_rng(seeds[0]),
                                     init_range=hyper.init_range,
                                     verbose=cfg.logging.show_progress)

    result = multi_run(train_records, val_records, test_records, hyper, seeds,
                       jobs=cfg.training.jobs, vocab=vocab, embeddings=embeddings,
                       show_progress=cfg.logging.show_progress)
    best = result.best_run()
    save_checkpoint(cfg.output.checkpoint or _out_path(cfg, CHECKPOINT_FILE), best.params, hyper)

    if len(result.runs) == 1:
        _write_json(_out_path(cfg, TRAINLOG_FILE), best.log.to_dict())
    else:
        _write_json(_out_path(cfg, TRAINLOG_FILE), {"runs": [run.log.to_dict() for run in result.runs]})
        _write_json(_out_path(cfg, RUNS_FILE), result.to_dict())

    predictions = predict(test_records, best.params, hyper)
    breakdown = error_breakdown(test_records, {r.id: p for r, p in zip(test_records, predictions)})
    metrics = {**best.test.to_dict(), "seed": best.seed, "error_breakdown": breakdown.to_dict()}
    if len(result.runs) > 1:
        metrics["mean"] = result.summary.to_dict()
    _write_json(_out_path(cfg, METRICS_FILE), metrics)

    print(format_metrics(best.test, breakdown))
    if len(result.runs) > 1:
        print()
        print(format_runs(result.to_dict()))
    if cfg.output.html_report:
        HTMLReporter().generate_report(best.test, _out_path(cfg, REPORT_FILE), breakdown,
                                       result.to_dict() if len(result.runs) > 1 else None)
    return EXIT_OK


def cmd_predict(cfg: Config, data_paths: Optional[List[str]]) -> int:
    paths = data_paths or ([cfg.data.test] if cfg.data.test else [])
    if len(paths) != 1:
        raise UsageError("predict takes exactly one --data file")
    checkpoint = cfg.output.checkpoint or os.path.join(cfg.output.out_dir, CHECKPOINT_FILE)
    params, hyper = load_checkpoint(checkpoint)
    records = load_dataset(paths[0], cfg.data.strict)
    predictions = predict(records, params, hyper)
    path = _out_path(cfg, PREDICTIONS_FILE)
    write_dataset(path, records, predictions, rendered=True)
    logger.info(f"Wrote predictions for {len(records)} sentences to {path}")
    return EXIT_OK


def cmd_eval(cfg: Config, gold_path: Optional[str], pred_path: str) -> int:
    gold_records = load_dataset(_require(gold_path or cfg.data.test, "--gold"), cfg.data.strict)
    pred = load_predictions(pred_path, cfg.data.strict)
    metrics = score(gold_by_id(gold_records), pred)
    breakdown = error_breakdown(gold_records, pred)
    _write_json(_out_path(cfg, METRICS_FILE),
                {**metrics.to_dict(), "error_breakdown": breakdown.to_dict()})
    print(format_metrics(metrics, breakdown))
    if cfg.output.html_report:
        HTMLReporter().generate_report(metrics, _out_path(cfg, REPORT_FILE), breakdown)
    return EXIT_OK


def cmd_stats(cfg: Config, data_paths: List[str], write: bool) -> int:
    splits = []
    for path in data_paths:
        name = os.path.splitext(os.path.basename(path))[0]
        splits.append((name, load_dataset(path, cfg.data.strict)))
    table = split_stats(splits)
    print(format_stats(table))
    if write:
        with open(_out_path(cfg, STATS_FILE), "w", encoding="utf-8") as f:
            f.write(stats_tsv(table))
    return EXIT_OK


def cmd_gradcheck(cfg: Config) -> int:
    hyper = micro_hyperparams(cfg.model.variant, l2_mode=cfg.model.l2_mode)
    worst_error, worst_name = 0.0, ""
    for seed in cfg.training.seeds:
        errors = micro_gradient_check(seed, hyper=hyper)
        name = max(errors, key=errors.get)
        if errors[name] >= worst_error:
            worst_error, worst_name = errors[name], f"{name} (seed {seed})"
    print(f"max relative error: {worst_error:.3e} at {worst_name}")
    if worst_error >= GRADCHECK_TOLERANCE:
        print(f"gradient check FAILED (tolerance {GRADCHECK_TOLERANCE:g})", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _read_runs(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
        load_run_f1s(data)
    except json.JSONDecodeError as e:
        raise DatasetError(f"malformed runs file: {e}", path)
    except (KeyError, TypeError, ValueError) as e:
        raise DatasetError(f"runs file lacks per-run seed/f1 entries: {e}", path)
    return data


def cmd_compare(cfg: Config, path_a: str, path_b: str, write: bool) -> int:
    f1s_a = load_run_f1s(_read_runs(path_a))
    f1s_b = load_run_f1s(_read_runs(path_b))
    if set(f1s_a) != set(f1s_b):
        raise AlignmentError(f"seed lists differ: {sorted(f1s_a)} vs {sorted(f1s_b)}")
    seeds = sorted(f1s_a)
    if len(seeds) < 2:
        raise AlignmentError(f"paired t-test needs runs from at least 2 seeds, got {len(seeds)}")
    comparison = compare_runs([f1s_a[s] for s in seeds], [f1s_b[s] for s in seeds])
    verdict = "significant" if comparison.significant else "not significant"
    print(f"mean F1 A {comparison.mean_a:.4f}  B {comparison.mean_b:.4f}  "
          f"t {comparison.test.t:.4f}  df {comparison.test.df}  "
          f"p {comparison.test.p_value:.4g} ({verdict} at {comparison.level:g})")
    if write:
        _write_json(_out_path(cfg, COMPARISON_FILE), comparison.to_dict())
    return EXIT_OK


def run(argv: Optional[List[str]] = None) -> int:
    """Execute one subcommand and return the process exit status"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else EXIT_OK

    try:
        cfg = resolve_config(args)
        setup_logging(args.log_level or os.environ.get(LOG_LEVEL_ENV) or cfg.logging.log_level,
                      cfg.logging.log_file, cfg.logging.log_format)
        resolved = cfg.to_dict()
        logger.info(f"Resolved configuration: {json.dumps(resolved, sort_keys=True)}")
        writes_outputs = args.command in ("train", "predict", "eval") or args.out is not None
        if writes_outputs:
            _write_json(_out_path(cfg, RESOLVED_CONFIG_FILE), resolved)

        if args.command == "train":
            return cmd_train(cfg)
        if args.command == "predict":
            return cmd_predict(cfg, args.data)
        if args.command == "eval":
            return cmd_eval(cfg, args.gold, args.pred)
        if args.command == "stats":
            return cmd_stats(cfg, args.data, write=args.out is not None)
        if args.command == "gradcheck":
            return cmd_gradcheck(cfg)
        return cmd_compare(cfg, args.runs_a, args.runs_b, write=args.out is not None)
    except (UsageError, ConfigError) as e:
        print(f"error: {e}", file=sys.stderr)
        logger.debug(traceback.format_exc())
        return EXIT_USAGE
    except DATA_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        logger.debug(traceback.format_exc())
        return EXIT_DATA


def main():
    """Main entry point"""
    sys.exit(run())


if __name__ == "__main__":
    main()
