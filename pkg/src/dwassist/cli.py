"""Command line interface.

Subcommands:

* ``replay SCRIPT``: run a session script through an in-process engine
  and print the suggestion offered after every step.
* ``eval``: leave-one-out evaluation of a corpus directory.
* ``export-dot TRACE``: render a trace document to DOT.
* ``corpus add FILE...`` / ``corpus stats``: manage a corpus directory.
* ``serve``: run the HTTP service.

``--format json-lines`` switches any reporting command to one JSON
object per line for machine consumption.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .canonical import canonical_json
from .corpus import CorpusStore, load_corpus
from .errors import DesignAssistError
from .evaluate import eval_leave_one_out
from .matching import MatchThresholds
from .dot import trace_to_dot
from .scripts import load_script, replay_script
from .service import AssistantEngine
from .trace import deserialize


def _add_threshold_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--min-similarity", type=float, default=0.6)
    parser.add_argument("--min-nodes", type=int, default=3)
    parser.add_argument("--max-candidates", type=int, default=5)


def _add_format_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("text", "json-lines"), default="text", dest="format"
    )


def _thresholds(args: argparse.Namespace) -> MatchThresholds:
    return MatchThresholds(
        min_similarity=args.min_similarity,
        min_nodes=args.min_nodes,
        max_candidates=args.max_candidates,
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dwassist", description="Trace-driven design assistant for warehouse schemas"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    replay = commands.add_parser("replay", help="replay a session script")
    replay.add_argument("script", type=Path)
    replay.add_argument("--corpus-dir", type=Path, default=None)
    replay.add_argument(
        "--complete",
        action="store_true",
        help="complete the session and store it when every action applies",
    )
    _add_threshold_flags(replay)
    _add_format_flag(replay)

    evaluate = commands.add_parser("eval", help="leave-one-out evaluation of a corpus")
    evaluate.add_argument("--corpus-dir", type=Path, required=True)
    _add_threshold_flags(evaluate)
    _add_format_flag(evaluate)

    export = commands.add_parser("export-dot", help="render a trace document as DOT")
    export.add_argument("trace", type=Path)

    corpus = commands.add_parser("corpus", help="manage a corpus directory")
    corpus_commands = corpus.add_subparsers(dest="corpus_command", required=True)
    add = corpus_commands.add_parser("add", help="add trace documents")
    add.add_argument("files", nargs="+", type=Path)
    add.add_argument("--corpus-dir", type=Path, required=True)
    add.add_argument("--min-nodes", type=int, default=3)
    stats = corpus_commands.add_parser("stats", help="summarize a corpus")
    stats.add_argument("--corpus-dir", type=Path, required=True)
    _add_format_flag(stats)

    serve = commands.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--config", type=Path, default=None)

    return parser


def _load_store(directory: Path | None, min_nodes: int) -> CorpusStore:
    if directory is None:
        return CorpusStore(min_nodes=min_nodes)
    return load_corpus(directory, min_nodes=min_nodes)


def _print_suggestion(step_seq: int, action_label: str, suggestion) -> None:
    kind = suggestion.kind.value
    if suggestion.proposals:
        head = suggestion.proposals[0]
        detail = f"{head.process.value} {head.suggested_label!r} (score {head.score:.3f})"
        print(f"step {step_seq} [{action_label}] -> {kind}: {detail}")
    else:
        print(f"step {step_seq} [{action_label}] -> {kind}")


def _cmd_replay(args: argparse.Namespace) -> int:
    script = load_script(args.script)
    store = _load_store(args.corpus_dir, args.min_nodes)
    engine = AssistantEngine(store=store, thresholds=_thresholds(args))
    transcript = replay_script(script, engine, complete=args.complete)
    if args.format == "json-lines":
        for step in transcript.steps:
            print(canonical_json(step.to_dict()))
        print(
            canonical_json(
                {
                    "session": transcript.session_id,
                    "trace": transcript.trace_document,
                    "corpus_id": transcript.corpus_id,
                }
            )
        )
    else:
        for step in transcript.steps:
            mark = "ok" if step.applied else "rejected"
            print(f"[{mark}] ", end="")
            _print_suggestion(step.seq, step.action.label, step.suggestion)
        if transcript.corpus_id:
            print(f"stored as {transcript.corpus_id}")
    return 0 if transcript.all_applied else 1


def _cmd_eval(args: argparse.Namespace) -> int:
    store = load_corpus(args.corpus_dir, min_nodes=args.min_nodes)
    report = eval_leave_one_out(store, _thresholds(args))
    if args.format == "json-lines":
        print(canonical_json(report.to_dict()))
    else:
        print(
            f"sessions={report.sessions} points={report.prediction_points} "
            f"hits={report.hits} misses={report.misses} no_advice={report.no_advice} "
            f"accuracy={report.accuracy:.4f}"
        )
        for stat in report.per_position:
            print(
                f"  position {stat.position}: {stat.hits}/{stat.predictions} "
                f"(accuracy {stat.accuracy:.4f})"
            )
    return 0


def _cmd_export_dot(args: argparse.Namespace) -> int:
    trace = deserialize(args.trace.read_text(encoding="utf-8"))
    sys.stdout.write(trace_to_dot(trace))
    return 0


def _cmd_corpus_add(args: argparse.Namespace) -> int:
    store = load_corpus(args.corpus_dir, min_nodes=args.min_nodes)
    failures = 0
    for path in args.files:
        try:
            trace = deserialize(path.read_text(encoding="utf-8"))
            corpus_id = store.store_trace(trace)
            print(f"{path}: {corpus_id}")
        except (DesignAssistError, OSError) as exc:
            failures += 1
            print(f"{path}: error: {exc}", file=sys.stderr)
    return 1 if failures else 0


def _cmd_corpus_stats(args: argparse.Namespace) -> int:
    store = load_corpus(args.corpus_dir)
    payload = store.stats()
    if store.load_errors:
        payload["load_errors"] = [
            {"filename": f.filename, "message": f.message} for f in store.load_errors
        ]
    if args.format == "json-lines":
        print(canonical_json(payload))
    else:
        print(f"records: {payload['records']}")
        for section in ("domains", "models", "levels"):
            parts = ", ".join(f"{k}={v}" for k, v in payload[section].items())
            print(f"{section}: {parts or '-'}")
        for failure in store.load_errors:
            print(f"load error: {failure.filename}: {failure.message}", file=sys.stderr)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .api import app_from_config
    from .config import load_config

    config = load_config(args.config)
    app = app_from_config(config)
    uvicorn.run(app, host=config.host, port=config.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "replay":
            return _cmd_replay(args)
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "export-dot":
            return _cmd_export_dot(args)
        if args.command == "corpus":
            if args.corpus_command == "add":
                return _cmd_corpus_add(args)
            return _cmd_corpus_stats(args)
        if args.command == "serve":
            return _cmd_serve(args)
    except (DesignAssistError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
