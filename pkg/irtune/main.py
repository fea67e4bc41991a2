# irtune/main.py
"""Command-line entry point: index, search, eval, fuse, optimize, report, space.

Exit status is 0 on success, 2 on a user error (bad input, invalid
configuration) and 1 on an internal error. Diagnostics go to stderr; data goes
to stdout or to the file named by --out.
"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from irtune.bayesopt.history import HistoryWriter, read_history
from irtune.bayesopt.objective import RetrievalObjective, synthetic_objective
from irtune.bayesopt.state import LoopSettings
from irtune.evaluation.fusion import zsum_fuse
from irtune.evaluation.measures import evaluate_run
from irtune.evaluation.report import (
    AGGREGATES,
    format_delta_table,
    format_eval_report,
    per_topic_delta,
    virtual_aggregate,
)
from irtune.evaluation.trec_io import format_run, read_qrels, read_run
from irtune.graph import run_bo_loop
from irtune.hyperspace.space import (
    ConfigPoint,
    dump_point,
    export_space,
    load_point,
    point_pairs,
    tuning_space,
    to_retrieval_config,
)
from irtune.indexing.corpus import read_corpus
from irtune.indexing.inverted_index import build_indexes, load_index, load_indexes, save_indexes
from irtune.indexing.text import load_stoplist
from irtune.retrieval.query import TOPIC_FIELDS, parse_query, read_topics
from irtune.retrieval.ranker import rank
from irtune.utils import kv_format
from irtune.utils.config import Config, load_config
from irtune.utils.errors import EmptyCollection, EmptyQuery, InvalidConfig, IrTuneError, UserError
from irtune.utils.logging_utils import configure_logging, get_logger
from irtune.utils.models import Measure, RunFile

logger = get_logger("Main")

DEFAULT_POINT = {"stopper": False, "stemmer": False, "rm": "LM_DIR", "mu_dir": 1000.0, "prf": False}


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _query_fields(args, settings: Config) -> List[str]:
    fields = args.query_fields.split(",") if args.query_fields else settings.retrieval.query_fields
    unknown = [f for f in fields if f not in TOPIC_FIELDS]
    if unknown:
        raise InvalidConfig([f"unknown query field {f} (choose from {','.join(TOPIC_FIELDS)})" for f in unknown])
    return fields


def _measures(text: str) -> List[Measure]:
    try:
        return [Measure(name.strip()) for name in text.split(",") if name.strip()]
    except ValueError:
        raise InvalidConfig(f"measures must be drawn from {','.join(m.value for m in Measure)}") from None


# --- subcommands ----------------------------------------------------------

def cmd_index(args, settings: Config) -> int:
    documents = list(read_corpus(args.corpus))
    if not documents:
        raise EmptyCollection(f"corpus {args.corpus} contains no documents")
    logger.info(f"Read {len(documents)} documents, building 4 index variants")
    indexes = build_indexes(documents, stoplist=load_stoplist(settings.index.stoplist))
    save_indexes(indexes, args.out)
    logger.info(f"Indexes written to {args.out}")
    return 0


def cmd_search(args, settings: Config) -> int:
    space = tuning_space(settings.space)
    point = load_point(args.config, space) if args.config else ConfigPoint.from_values(DEFAULT_POINT, space)
    variant, retrieval_config = to_retrieval_config(point)
    index = load_index(Path(args.index) / variant.dirname)
    stoplist = load_stoplist(settings.index.stoplist)
    depth = args.depth or settings.retrieval.depth
    rankings = {}
    for topic, text in read_topics(args.topics, _query_fields(args, settings)).items():
        try:
            query = parse_query(text, variant, stoplist)
        except EmptyQuery:
            logger.warning(f"Topic {topic}: query {text!r} is empty after preprocessing, skipped")
            continue
        rankings[topic] = rank(index, query, retrieval_config, depth, topic=topic)
    _emit(format_run(RunFile(tag=args.tag, rankings=rankings)), args.out)
    return 0


def cmd_eval(args, settings: Config) -> int:
    qrels = read_qrels(args.qrels)
    measures = _measures(args.measures)
    runs = [read_run(path) for path in args.runs]
    chunks = []
    for run in runs:
        prefix = f"{run.tag}\t" if len(runs) > 1 else ""
        chunks.append(format_eval_report(evaluate_run(run, qrels), measures, args.per_topic, prefix))
    _emit("".join(chunks), args.out)
    return 0


def cmd_fuse(args, settings: Config) -> int:
    fused = zsum_fuse(read_run(args.run_a), read_run(args.run_b), args.tag)
    _emit(format_run(fused), args.out)
    return 0


def cmd_optimize(args, settings: Config) -> int:
    space = tuning_space(settings.space)
    loop_settings = LoopSettings.from_optimizer_config(
        settings.optimizer,
        budget=args.budget,
        init_n=args.init,
        n_candidates=args.candidates,
        seed=args.seed,
    )

    if args.synthetic:
        objective = synthetic_objective
    else:
        missing = [flag for flag, value in (("--index", args.index), ("--topics", args.topics), ("--qrels", args.qrels))
                   if not value]
        if missing:
            raise InvalidConfig([f"optimize needs {flag} (or --synthetic)" for flag in missing])
        objective = RetrievalObjective(
            load_indexes(args.index),
            read_topics(args.topics, _query_fields(args, settings)),
            read_qrels(args.qrels),
            depth=args.depth or settings.retrieval.depth,
            stoplist=load_stoplist(settings.index.stoplist),
        )

    history = []
    if args.resume:
        if not args.history:
            raise InvalidConfig("--resume needs --history")
        if Path(args.history).exists():
            history = read_history(args.history, space)

    if args.history:
        with HistoryWriter(args.history, space, append=bool(history)) as writer:
            state = run_bo_loop(objective, space, loop_settings, history=history, sink=writer.write)
    else:
        state = run_bo_loop(objective, space, loop_settings, history=history)

    best_point, best_y = state.best
    logger.info(f"Incumbent objective value {best_y:.4f} after {len(state.history)} evaluations")
    if args.best:
        dump_point(best_point, args.best, space)
    sys.stdout.write(kv_format.dumps(point_pairs(best_point, space)))
    return 0


def cmd_report(args, settings: Config) -> int:
    qrels = read_qrels(args.qrels)
    measure = _measures(args.measure)[0]
    runs = [read_run(path) for path in args.runs]
    if args.baseline and args.pool:
        raise InvalidConfig("give either --baseline or --pool, not both")
    if args.baseline:
        baseline = read_run(args.baseline)
    elif args.pool:
        baseline = virtual_aggregate([read_run(p) for p in args.pool], qrels, measure, args.aggregate)
    else:
        raise InvalidConfig("report needs --baseline RUN or --pool RUN...")
    table = per_topic_delta(runs, baseline, qrels, measure)
    _emit(format_delta_table(table, [run.tag for run in runs]), args.out)
    return 0


def cmd_space(args, settings: Config) -> int:
    _emit(export_space(tuning_space(settings.space)), args.out)
    return 0


# --- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--settings", default=None, help="Flat key=value settings file (e.g. optimizer.budget=80).")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging.")
    common.add_argument("-q", "--quiet", action="store_true", help="Only warnings and errors.")

    parser = argparse.ArgumentParser(
        prog="irtune", description="Tune a lexical search engine's hyperparameters with Bayesian optimization."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index", parents=[common], help="Build the 4 (stopper, stemmer) index variants.")
    p.add_argument("--corpus", required=True, help="TREC SGML or JSON-lines corpus.")
    p.add_argument("--out", required=True, help="Output index directory.")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("search", parents=[common], help="Rank topics under one configuration, print a TREC run.")
    p.add_argument("--index", required=True, help="Index directory written by `index`.")
    p.add_argument("--topics", required=True, help="TREC topic file or topic_id<TAB>query TSV.")
    p.add_argument("--config", default=None, help="Configuration point (key=value). Default: LM_DIR, mu_dir=1000.")
    p.add_argument("--tag", default="irtune", help="Run tag (default: irtune).")
    p.add_argument("--depth", type=int, default=None, help="Ranking depth (default: 1000).")
    p.add_argument("--query-fields", default=None, help="Comma-separated topic fields (default: title).")
    p.add_argument("--out", default=None, help="Output run file (default: stdout).")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("eval", parents=[common], help="Evaluate runs: measure<TAB>topic|all<TAB>value.")
    p.add_argument("runs", nargs="+", help="Run file(s).")
    p.add_argument("--qrels", required=True, help="Qrels file.")
    p.add_argument("--measures", default="map,ndcg,P_10", help="Comma-separated measures (default: map,ndcg,P_10).")
    p.add_argument("--per-topic", action="store_true", help="Also print per-topic values.")
    p.add_argument("--out", default=None, help="Output file (default: stdout).")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("fuse", parents=[common], help="Fuse two runs by summing per-topic z-scores.")
    p.add_argument("run_a", help="First run file.")
    p.add_argument("run_b", help="Second run file.")
    p.add_argument("--tag", default="fused", help="Tag of the fused run (default: fused).")
    p.add_argument("--out", default=None, help="Output run file (default: stdout).")
    p.set_defaults(func=cmd_fuse)

    p = sub.add_parser("optimize", parents=[common], help="Bayesian optimization of the retrieval configuration.")
    p.add_argument("--index", default=None, help="Index directory written by `index`.")
    p.add_argument("--topics", default=None, help="Topic file.")
    p.add_argument("--qrels", default=None, help="Qrels file.")
    p.add_argument("--budget", type=int, default=None, help="Total evaluations (default: 50).")
    p.add_argument("--init", type=int, default=None, help="Initial random design size (default: 10).")
    p.add_argument("--candidates", type=int, default=None, help="Random candidates per proposal (default: 2000).")
    p.add_argument("--seed", type=int, default=None, help="Random seed (default: 42).")
    p.add_argument("--depth", type=int, default=None, help="Ranking depth (default: 1000).")
    p.add_argument("--query-fields", default=None, help="Comma-separated topic fields (default: title).")
    p.add_argument("--history", default=None, help="History TSV, one line per evaluation.")
    p.add_argument("--best", default=None, help="Write the best configuration point here.")
    p.add_argument("--resume", action="store_true", help="Replay --history and continue appending to it.")
    p.add_argument("--synthetic", action="store_true", help="Optimize the built-in synthetic objective instead.")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("report", parents=[common], help="Per-topic measure differences against a baseline.")
    p.add_argument("runs", nargs="+", help="Run file(s) to compare.")
    p.add_argument("--qrels", required=True, help="Qrels file.")
    p.add_argument("--baseline", default=None, help="Baseline run file.")
    p.add_argument("--pool", nargs="+", default=None, help="Runs forming a virtual aggregate baseline.")
    p.add_argument("--aggregate", choices=AGGREGATES, default="best", help="Aggregate over --pool (default: best).")
    p.add_argument("--measure", default="map", help="Measure (default: map).")
    p.add_argument("--out", default=None, help="Output TSV (default: stdout).")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("space", parents=[common], help="Print the hyperparameter space table.")
    p.add_argument("--out", default=None, help="Output file (default: stdout).")
    p.set_defaults(func=cmd_space)
    return parser


def _check_args(args) -> None:
    problems = []
    for flag in ("depth", "budget", "init", "candidates"):
        value = getattr(args, flag, None)
        if value is not None and value < 1:
            problems.append(f"--{flag} must be >= 1")
    if getattr(args, "seed", None) is not None and args.seed < 0:
        problems.append("--seed must be >= 0")
    if problems:
        raise InvalidConfig(problems)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(verbose=args.verbose, quiet=args.quiet)
    try:
        _check_args(args)
        settings = load_config(args.settings)
        return args.func(args, settings)
    except InvalidConfig as e:
        for violation in e.violations:
            print(f"irtune: invalid: {violation}", file=sys.stderr)
        return 2
    except (UserError, ValidationError) as e:
        print(f"irtune: error: {e}", file=sys.stderr)
        return 2
    except IrTuneError as e:
        print(f"irtune: internal error: {e}", file=sys.stderr)
        return 1
    except Exception as e:
        logger.exception(f"Unexpected failure: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
