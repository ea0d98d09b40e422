"""Command-line front end: ``formclust build | assign | eval``.

Exit codes: 0 success, 2 usage error, 3 input format error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from pathlib import Path

from .cluster import Lexicon, assign, build_model
from .conllu import read_tokens
from .distance import DistanceMode, Params
from .embeddings import FormatError, Vocabulary, load_vectors
from .evaluate import evaluate_run, results_header, results_row
from .hypercluster import partition

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FORMAT = 3
EXIT_IO = 4

DEFAULTS = Params()


class UsageError(Exception):
    pass


def _threads(value: str) -> int:
    if value == "auto":
        return os.cpu_count() or 1
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("--threads must be >= 1 or 'auto'")
    return n


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--t", type=float, default=None, help=f"merge threshold (default {DEFAULTS.t})")
    p.add_argument("--K", type=int, default=None, help=f"stem length (default {DEFAULTS.K})")
    p.add_argument("--N", type=int, default=None, help=f"vocabulary cap (default {DEFAULTS.N})")
    p.add_argument("--mode", choices=[m.value for m in DistanceMode], default=None,
                   help=f"distance (default {DEFAULTS.mode.value})")


def _resolve_params(args, base: Params = DEFAULTS) -> Params:
    try:
        return Params(
            t=base.t if args.t is None else args.t,
            K=base.K if args.K is None else args.K,
            N=base.N if args.N is None else args.N,
            mode=base.mode if args.mode is None else DistanceMode(args.mode),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _explicit_flags(args) -> dict:
    return {k: getattr(args, k) for k in ("t", "K", "N", "mode") if getattr(args, k) is not None}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="formclust", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="cluster a vector vocabulary into a lexicon")
    p.add_argument("--vectors", required=True, type=Path)
    p.add_argument("--out", "--lexicon", dest="out", required=True, type=Path, help="lexicon TSV to write")
    p.add_argument("--threads", type=_threads, default="auto")
    _add_param_flags(p)

    p = sub.add_parser("assign", help="map forms from stdin to cluster ids")
    p.add_argument("--lexicon", required=True, type=Path)
    p.add_argument("--vectors", type=Path, help="vectors for forms missing from the lexicon")
    p.add_argument("--threads", type=_threads, default="auto", help="accepted for symmetry; assignment is sequential")

    p = sub.add_parser("eval", help="score a lexicon on a CoNLL-U treebank")
    p.add_argument("--vectors", required=True, type=Path)
    p.add_argument("--treebank", required=True, type=Path)
    p.add_argument("--lexicon", type=Path, help="prebuilt lexicon; built on the fly when omitted")
    p.add_argument("--out", type=Path, help="results TSV to write")
    p.add_argument("--name", help="treebank name for the results row (default: derived from the file name)")
    p.add_argument("--threads", type=_threads, default="auto")
    _add_param_flags(p)
    return parser


def _echo_params(params: Params, stream) -> None:
    print(f"params\t{params.describe()}", file=stream)


def treebank_name(path: Path) -> str:
    """``cs_pdt-ud-dev.conllu`` -> ``cs_pdt``."""
    return path.name.split("-ud-")[0].split(".")[0]


def cmd_build(args) -> int:
    params = _resolve_params(args)
    out = sys.stdout
    _echo_params(params, out)
    started = time.perf_counter()
    vocab = load_vectors(args.vectors, params.N)
    if len(vocab) == 0:
        print("warning: empty vocabulary, writing an empty lexicon", file=sys.stderr)
    loaded = time.perf_counter()
    lex = build_model(vocab, params, threads=args.threads)
    clustered = time.perf_counter()
    lex.save(args.out)
    print(f"forms\t{len(vocab)}", file=out)
    print(f"blocks\t{len(partition(vocab, params.K))}", file=out)
    print(f"clusters\t{lex.n_clusters}", file=out)
    print(
        f"time: load {loaded - started:.2f}s, cluster {clustered - loaded:.2f}s "
        f"({args.threads} workers)",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_assign(args) -> int:
    lex = Lexicon.load(args.lexicon)
    params = lex.params
    _echo_params(params, sys.stderr)
    vocab = load_vectors(args.vectors, params.N) if args.vectors else Vocabulary.empty()
    out = sys.stdout
    for line in sys.stdin:
        form = line.rstrip("\r\n")
        if not form:
            continue
        out.write(f"{form}\t{assign(form, lex, vocab, params)}\n")
    return EXIT_OK


def cmd_eval(args) -> int:
    if args.lexicon:
        lex = Lexicon.load(args.lexicon)
        params = lex.params
        explicit = _explicit_flags(args)
        if explicit:
            wanted = _resolve_params(args, params)
            if wanted != params:
                raise UsageError(
                    f"flags {explicit} disagree with the lexicon's params ({params.describe()}); "
                    "drop them or rebuild the lexicon"
                )
        vocab = load_vectors(args.vectors, params.N)
    else:
        params = _resolve_params(args)
        vocab = load_vectors(args.vectors, params.N)
        lex = build_model(vocab, params, threads=args.threads)

    _echo_params(params, sys.stdout)
    tokens = read_tokens(args.treebank)
    if not tokens:
        raise FormatError("treebank has no tokens", args.treebank)
    report = evaluate_run(tokens, lex, vocab, params)
    print(report.summary())

    name = args.name or treebank_name(args.treebank)
    table = results_header() + "\n" + results_row(name, report) + "\n"
    if args.out:
        args.out.write_text(table, encoding="utf-8")
    else:
        sys.stdout.write(table)
    return EXIT_OK


COMMANDS = {"build": cmd_build, "assign": cmd_assign, "eval": cmd_eval}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"formclust: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, UnicodeDecodeError) as exc:
        print(f"formclust: format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except OSError as exc:
        print(f"formclust: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
