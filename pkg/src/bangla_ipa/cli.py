"""
Command-line interface: transcribe, evaluate, ipa and lexicon tooling.

Stdout carries pipeline output only; every diagnostic goes to stderr
through the project logger.

Exit codes:
    0    success
    1    errors found (bad lexicon or corpus, or warnings under --strict)
    2    usage error
    3    I/O error
    130  interrupted
"""

import argparse
import io
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from itertools import islice
from pathlib import Path
from typing import Iterable, Iterator, List, Optional, Sequence, TextIO

from pydantic import BaseModel, Field

from .core.config import get_settings
from .core.exceptions import BanglaIpaError, CorpusError, IpaError, LexiconError
from .core.schemas import NumberMode, ResultSource, TranscriptionOptions
from .eval import (
    evaluate_corpus,
    load_corpus_file,
    load_vocab,
    save_report,
    vocab_from_corpus,
)
from .g2p import ALL_RULE_IDS, G2PEngine, SentenceResult
from .lexicon import Lexicon, load_lexicon_file, load_lexicons, merge, save_lexicon
from .observability.logger import get_logger, set_console_level
from .observability.metric import get_metrics
from .phoneset import normalize_ipa, parse_ipa, validate_phoneseq


logger = get_logger("bangla_ipa.cli")

EXIT_OK = 0
EXIT_ERRORS = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_INTERRUPTED = 130

STDIO = "-"
BATCH_SIZE = 2048


# ─── Config ──────────────────────────────────────────────────────────────────

class CliConfig(BaseModel):
    """Resolved settings for one CLI invocation."""
    command: str = Field(..., description="Subcommand name")
    lexicons: List[Path] = Field(default_factory=list, description="Overlay lexicons, applied left to right")
    lexicon_dir: Optional[Path] = Field(default=None, description="Directory of overlay lexicons")
    options: TranscriptionOptions = Field(default_factory=TranscriptionOptions, description="Engine options")
    input: Optional[Path] = Field(default=None, description="Input file; None reads stdin")
    output: Optional[Path] = Field(default=None, description="Output file; None writes stdout")
    report: Optional[Path] = Field(default=None, description="Evaluation report path")
    strict: bool = Field(default=False, description="Turn warnings into a non-zero exit")
    jobs: int = Field(default=1, ge=1, description="Worker processes")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "CliConfig":
        settings = get_settings()
        number_policy = args.numbers or settings.number_policy
        try:
            mode = NumberMode(number_policy)
        except ValueError:
            logger.warning(f"unknown number policy {number_policy!r}, using auto", stage="CLI")
            mode = NumberMode.AUTO
        options = TranscriptionOptions(
            careful_speech=args.careful,
            number_policy=mode,
            auto_digit_threshold=max(1, settings.auto_digit_threshold),
            mark_morph_length=not args.no_morph_length,
            emit_syllable_dots=args.syllable_dots,
            disabled_rules=frozenset(args.disable_rule or ()),
        )
        lexicon_dir = args.lexicon_dir if args.lexicon_dir is not None else settings.lexicon_dir
        return cls(
            command=args.command,
            lexicons=[Path(p) for p in args.lexicon or ()],
            lexicon_dir=lexicon_dir,
            options=options,
            input=_optional_path(getattr(args, "input", None)),
            output=_optional_path(getattr(args, "output", None)),
            report=getattr(args, "report", None),
            strict=args.strict,
            jobs=args.jobs,
        )

    def build_engine(self) -> G2PEngine:
        return G2PEngine(load_lexicons(self.lexicons, self.lexicon_dir), self.options)


def _optional_path(value: Optional[str]) -> Optional[Path]:
    if value is None or value == STDIO:
        return None
    return Path(value)


# ─── Parser ──────────────────────────────────────────────────────────────────

def _positive_int(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)

    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="count", default=0,
                           help="More diagnostics on stderr (-vv for rule traces)")
    verbosity.add_argument("-q", "--quiet", action="store_true",
                           help="Errors only on stderr")

    common.add_argument("--lexicon", action="append", metavar="FILE",
                        help="Overlay lexicon TSV (repeatable, applied in order)")
    common.add_argument("--lexicon-dir", type=Path, default=None,
                        help="Load every *.tsv in this directory as an overlay "
                             "(default: $BANGLA_IPA_LEXICON_DIR)")
    common.add_argument("--numbers", choices=[m.value for m in NumberMode], default=None,
                        help="How digit runs are read (default: auto)")
    common.add_argument("--careful", action="store_true",
                        help="Careful register: mark every হ in the rule trace")
    common.add_argument("--no-morph-length", action="store_true",
                        help="Do not lengthen emphatic suffix vowels")
    common.add_argument("--syllable-dots", action="store_true",
                        help="Insert '.' between syllables")
    common.add_argument("--disable-rule", action="append", metavar="RULE_ID",
                        help="Skip an optional rule (repeatable)")
    common.add_argument("--strict", action="store_true",
                        help="Exit 1 when any warning or violation is reported")
    common.add_argument("--jobs", type=_positive_int, default=1,
                        help="Worker processes (default: 1, sequential)")
    return common


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for the ``bangla-ipa`` command."""
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="bangla-ipa",
        description="Bengali text to IPA transcription and evaluation",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  echo "মুসক" | bangla-ipa transcribe
  bangla-ipa transcribe news.txt -o news.ipa --trace
  bangla-ipa transcribe news.txt --corpus-out corpus.tsv
  bangla-ipa evaluate --corpus test.tsv --train-corpus train.tsv --report report.txt
  bangla-ipa ipa normalize refs.txt --fold
  bangla-ipa lexicon check my_words.tsv
  bangla-ipa lexicon merge base.tsv extra.tsv -o merged.tsv
        """
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    transcribe = sub.add_parser("transcribe", parents=[common],
                                help="Transcribe text, one IPA line per input line")
    transcribe.add_argument("input", nargs="?", default=STDIO, help="Input file (default: stdin)")
    transcribe.add_argument("-o", "--output", default=STDIO, help="Output file (default: stdout)")
    transcribe.add_argument("--trace", action="store_true",
                            help="Append the rule trace as a tab-separated column")
    transcribe.add_argument("--corpus-out", type=Path, default=None,
                            help="Also write an id<TAB>text<TAB>ipa corpus")

    evaluate = sub.add_parser("evaluate", parents=[common],
                              help="Score the engine against a reference corpus")
    evaluate.add_argument("--corpus", type=Path, required=True, help="Reference corpus TSV")
    evaluate.add_argument("--vocab", type=Path, default=None, help="Vocabulary file for the OOV rate")
    evaluate.add_argument("--train-corpus", type=Path, default=None,
                          help="Derive the OOV vocabulary from a training corpus")
    evaluate.add_argument("--report", type=Path, default=None,
                          help="Write the report (.json or text)")
    evaluate.add_argument("--split", default=None, help="Split label recorded in the report")
    evaluate.add_argument("--no-fold", action="store_true",
                          help="Score IPA without folding loose glyphs")

    ipa = sub.add_parser("ipa", help="IPA stream filters")
    ipa_sub = ipa.add_subparsers(dest="ipa_command", metavar="ACTION", required=True)
    for name, help_text in (("normalize", "Rewrite IPA lines in canonical form"),
                            ("validate", "Report inventory and diacritic violations per line")):
        action = ipa_sub.add_parser(name, parents=[common], help=help_text)
        action.add_argument("input", nargs="?", default=STDIO, help="Input file (default: stdin)")
        action.add_argument("-o", "--output", default=STDIO, help="Output file (default: stdout)")
        action.add_argument("--fold", action="store_true", help="Fold loose glyphs (i, u, a, r, t, d)")

    lexicon = sub.add_parser("lexicon", help="Lexicon tooling")
    lex_sub = lexicon.add_subparsers(dest="lexicon_command", metavar="ACTION", required=True)
    check = lex_sub.add_parser("check", parents=[common], help="Validate a lexicon file")
    check.add_argument("file", type=Path, help="Lexicon TSV")
    check.add_argument("--lenient", action="store_true", help="Report every bad line instead of stopping")
    merge_cmd = lex_sub.add_parser("merge", parents=[common], help="Merge lexicons, later files win")
    merge_cmd.add_argument("files", type=Path, nargs="+", help="Lexicon TSVs in overlay order")
    merge_cmd.add_argument("-o", "--output", default=STDIO, help="Output file (default: stdout)")

    return parser


# ─── Streams ─────────────────────────────────────────────────────────────────

@contextmanager
def _open_input(path: Optional[Path]) -> Iterator[TextIO]:
    if path is None:
        stream = sys.stdin
        if hasattr(stream, "reconfigure"):
            try:
                stream.reconfigure(encoding="utf-8")
            except (ValueError, io.UnsupportedOperation):
                pass
        yield stream
    else:
        with open(path, "r", encoding="utf-8") as f:
            yield f


@contextmanager
def _open_output(path: Optional[Path]) -> Iterator[TextIO]:
    if path is None:
        stream = sys.stdout
        if hasattr(stream, "reconfigure"):
            try:
                stream.reconfigure(encoding="utf-8")
            except (ValueError, io.UnsupportedOperation):
                pass
        yield stream
        stream.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            yield f


def _lines(stream: Iterable[str]) -> Iterator[str]:
    for raw in stream:
        yield raw.rstrip("\r\n")


# ─── Parallel transcription ──────────────────────────────────────────────────

_worker_engine: Optional[G2PEngine] = None


def _init_worker(lexicons: List[Path], lexicon_dir: Optional[Path], options: TranscriptionOptions):
    global _worker_engine
    _worker_engine = G2PEngine(load_lexicons(lexicons, lexicon_dir), options)


def _worker_transcribe(line: str) -> SentenceResult:
    return _worker_engine.transcribe_sentence(line)


def transcribe_lines(lines: Iterable[str], config: CliConfig,
                     engine: Optional[G2PEngine] = None) -> Iterator[SentenceResult]:
    """
    Transcribe lines in order.

    With ``config.jobs > 1`` lines go to a process pool in batches; each
    worker builds its own engine, and results come back in input order.
    """
    if config.jobs <= 1:
        engine = engine or config.build_engine()
        for line in lines:
            yield engine.transcribe_sentence(line)
        return

    with ProcessPoolExecutor(
        max_workers=config.jobs,
        initializer=_init_worker,
        initargs=(config.lexicons, config.lexicon_dir, config.options),
    ) as pool:
        iterator = iter(lines)
        chunksize = max(1, BATCH_SIZE // (config.jobs * 4))
        while True:
            batch = list(islice(iterator, BATCH_SIZE))
            if not batch:
                break
            yield from pool.map(_worker_transcribe, batch, chunksize=chunksize)


def format_trace(result: SentenceResult) -> str:
    """``word:rule+rule`` per word, space separated."""
    return " ".join(
        f"{w.word}:{'+'.join(step.rule_id for step in w.trace)}" for w in result.words
    )


# ─── Commands ────────────────────────────────────────────────────────────────

def cmd_transcribe(args: argparse.Namespace, config: CliConfig) -> int:
    """One IPA line per input line; empty lines stay empty."""
    metrics = get_metrics()
    warnings = 0
    corpus_file: Optional[TextIO] = None
    metrics.start_timer("transcribe")
    try:
        if args.corpus_out is not None:
            corpus_file = open(args.corpus_out, "w", encoding="utf-8", newline="\n")
        with _open_input(config.input) as source, _open_output(config.output) as sink:
            record_no = 0
            for result in transcribe_lines(_lines(source), config):
                ipa = result.render()
                sink.write(ipa + ("\t" + format_trace(result) if args.trace else "") + "\n")

                metrics.increment("lines")
                metrics.increment("words", len(result.words))
                metrics.increment("lexicon_hits", sum(
                    1 for w in result.words if w.source is ResultSource.LEXICON
                ))
                for w in result.warnings:
                    warnings += 1
                    logger.warning(f"line {metrics.get_counter('lines')}: {w}", stage="Transcribe")

                if corpus_file is not None and result.text.strip():
                    record_no += 1
                    text = result.text.replace("\t", " ")
                    corpus_file.write(f"s{record_no:06d}\t{text}\t{ipa}\n")
    finally:
        if corpus_file is not None:
            corpus_file.close()
        metrics.stop_timer("transcribe", record_as="transcribe_ms")

    logger.info(
        f"{metrics.get_counter('lines')} lines, {metrics.get_counter('words')} words, "
        f"{metrics.throughput('words', 'transcribe_ms'):.0f} words/s",
        stage="Transcribe",
    )
    if config.strict and warnings:
        logger.error(f"{warnings} warnings under --strict", stage="Transcribe")
        return EXIT_ERRORS
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace, config: CliConfig) -> int:
    """Print the summary line; write the full report when asked."""
    metrics = get_metrics()
    corpus = load_corpus_file(args.corpus, split=args.split)

    vocab = None
    if args.vocab is not None:
        with open(args.vocab, "r", encoding="utf-8") as f:
            vocab = load_vocab(f)
    elif args.train_corpus is not None:
        vocab = vocab_from_corpus(load_corpus_file(args.train_corpus, split="train"))

    metrics.start_timer("evaluate")
    engine = config.build_engine() if config.jobs <= 1 else None
    hypotheses = None
    if config.jobs > 1:
        hypotheses = [r.render() for r in transcribe_lines(corpus.texts(), config)]
    report = evaluate_corpus(
        corpus,
        engine=engine,
        vocab=vocab,
        fold_aliases=not args.no_fold,
        hypotheses=hypotheses,
    )
    metrics.stop_timer("evaluate", record_as="evaluate_ms")
    metrics.increment("lines", report.n_sentences)

    if config.report is not None:
        save_report(report, config.report)
        logger.info(f"report written to {config.report}", stage="Evaluate")
    print(report.summary_line())

    if config.strict and report.warnings:
        logger.error(f"{len(report.warnings)} warnings under --strict", stage="Evaluate")
        return EXIT_ERRORS
    return EXIT_OK


def cmd_ipa(args: argparse.Namespace, config: CliConfig) -> int:
    """normalize / validate, line by line."""
    problems = 0
    with _open_input(config.input) as source, _open_output(config.output) as sink:
        for line_no, line in enumerate(_lines(source), start=1):
            if args.ipa_command == "normalize":
                try:
                    out = normalize_ipa(line, strict=config.strict, fold_aliases=args.fold)
                except IpaError as e:
                    problems += 1
                    logger.error(f"line {line_no}: {e}", stage="IPA")
                    out = normalize_ipa(line, strict=False, fold_aliases=args.fold)
                sink.write(out + "\n")
            else:
                violations = validate_phoneseq(parse_ipa(line, strict=False, fold_aliases=args.fold))
                problems += bool(violations)
                sink.write(("; ".join(str(v) for v in violations) if violations else "ok") + "\n")
    if config.strict and problems:
        return EXIT_ERRORS
    return EXIT_OK


def cmd_lexicon(args: argparse.Namespace, config: CliConfig) -> int:
    """check / merge."""
    if args.lexicon_command == "check":
        try:
            lexicon = load_lexicon_file(args.file, strict=not args.lenient)
        except LexiconError as e:
            logger.error(f"{args.file}: {e}", stage="Lexicon")
            return EXIT_ERRORS
        for error in lexicon.errors:
            logger.error(error, stage="Lexicon")
        if lexicon.errors:
            return EXIT_ERRORS
        print(f"{args.file}: {len(lexicon)} entries ok")
        return EXIT_OK

    merged = Lexicon(name="merged")
    for path in args.files:
        merged = merge(merged, load_lexicon_file(path, strict=True))
    with _open_output(_optional_path(args.output)) as sink:
        save_lexicon(merged, sink)
    logger.info(f"merged {len(args.files)} files into {len(merged)} entries", stage="Lexicon")
    return EXIT_OK


COMMANDS = {
    "transcribe": cmd_transcribe,
    "evaluate": cmd_evaluate,
    "ipa": cmd_ipa,
    "lexicon": cmd_lexicon,
}


# ─── Entry points ────────────────────────────────────────────────────────────

def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse argv and run one subcommand.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        Process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        unknown = sorted(set(args.disable_rule or ()) - set(ALL_RULE_IDS))
        if unknown:
            parser.error(f"unknown rule ids: {', '.join(unknown)}")
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    if args.quiet:
        set_console_level("ERROR")
    elif args.verbose:
        set_console_level("DEBUG" if args.verbose > 1 else "INFO")

    command = args.command
    logger.run_start(command)
    metrics = get_metrics()
    metrics.reset()
    metrics.start_timer("run")
    try:
        config = CliConfig.from_args(args)
        code = COMMANDS[command](args, config)
    except KeyboardInterrupt:
        logger.warning("interrupted", stage="CLI")
        return EXIT_INTERRUPTED
    except OSError as e:
        logger.error(f"I/O error: {e}", stage="CLI")
        return EXIT_IO
    except UnicodeDecodeError as e:
        logger.error(f"I/O error: input is not valid UTF-8: {e}", stage="CLI")
        return EXIT_IO
    except (LexiconError, CorpusError) as e:
        logger.error(str(e), stage="CLI")
        return EXIT_ERRORS
    except BanglaIpaError as e:
        logger.error(str(e), stage="CLI")
        return EXIT_ERRORS
    except Exception as e:
        logger.error(f"unexpected failure: {e}", stage="CLI", exc_info=args.verbose > 1)
        return EXIT_ERRORS
    duration = metrics.stop_timer("run", record_as="run_ms")
    logger.debug(f"metrics: {metrics.get_summary()}", stage="CLI")
    logger.run_complete(command, duration * 1000)
    return code


def main():
    """Console-script entry point."""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
