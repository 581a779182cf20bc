"""
Parallel-corpus evaluation: Levenshtein alignment, WER/PER/CER, OOV rate
and report writing.

Rates are micro-averaged: total edits over total reference units.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from pydantic import BaseModel, ConfigDict, Field

from .core.exceptions import (
    CorpusParseError,
    DegenerateReferenceError,
    DuplicateIdError,
)
from .core.schemas import EvalReport, SentenceScore
from .core.utils import PathLike, iter_tsv, save_json_to_file, save_text_to_file
from .observability.logger import get_logger
from .phoneset import normalize_ipa, parse_ipa, unknown_symbols
from .script import TokenKind, nfc, tokenize


logger = get_logger("bangla_ipa.eval")


# ─── Alignment ───────────────────────────────────────────────────────────────

class EditOp(str, Enum):
    """Edit operations, in backtrace preference order."""
    MATCH = "Match"
    SUBSTITUTE = "Substitute"
    DELETE = "Delete"
    INSERT = "Insert"


@dataclass(frozen=True)
class AlignOp:
    """One alignment column; indices are None on the side that has no symbol."""
    op: EditOp
    ref_index: Optional[int]
    hyp_index: Optional[int]
    ref_symbol: Optional[Hashable] = None
    hyp_symbol: Optional[Hashable] = None


@dataclass(frozen=True)
class Alignment:
    """Minimal-cost alignment of two symbol lists."""
    ops: Tuple[AlignOp, ...]
    distance: int

    def apply(self, ref: Sequence[Hashable]) -> List[Hashable]:
        """Rewrite ref with the ops; the result equals the aligned hyp."""
        out: List[Hashable] = []
        for a in self.ops:
            if a.op is EditOp.MATCH:
                out.append(ref[a.ref_index])
            elif a.op in (EditOp.SUBSTITUTE, EditOp.INSERT):
                out.append(a.hyp_symbol)
        return out

    def counts(self) -> Dict[EditOp, int]:
        result = {op: 0 for op in EditOp}
        for a in self.ops:
            result[a.op] += 1
        return result


def edit_distance_alignment(ref: Sequence[Hashable], hyp: Sequence[Hashable]) -> Alignment:
    """
    Levenshtein alignment with unit costs.

    Ties on the backtrace prefer Match, then Substitute, Delete, Insert.

    Args:
        ref: Reference symbols
        hyp: Hypothesis symbols

    Returns:
        Alignment whose distance is the number of non-Match ops
    """
    n, m = len(ref), len(hyp)
    d = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        d[i][0] = i
    for j in range(1, m + 1):
        d[0][j] = j
    for i in range(1, n + 1):
        row, prev = d[i], d[i - 1]
        r = ref[i - 1]
        for j in range(1, m + 1):
            cost = 0 if r == hyp[j - 1] else 1
            row[j] = min(prev[j - 1] + cost, prev[j] + 1, row[j - 1] + 1)

    ops: List[AlignOp] = []
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and j > 0 and ref[i - 1] == hyp[j - 1] and d[i][j] == d[i - 1][j - 1]:
            ops.append(AlignOp(EditOp.MATCH, i - 1, j - 1, ref[i - 1], hyp[j - 1]))
            i, j = i - 1, j - 1
        elif i > 0 and j > 0 and d[i][j] == d[i - 1][j - 1] + 1:
            ops.append(AlignOp(EditOp.SUBSTITUTE, i - 1, j - 1, ref[i - 1], hyp[j - 1]))
            i, j = i - 1, j - 1
        elif i > 0 and d[i][j] == d[i - 1][j] + 1:
            ops.append(AlignOp(EditOp.DELETE, i - 1, None, ref[i - 1], None))
            i -= 1
        else:
            ops.append(AlignOp(EditOp.INSERT, None, j - 1, None, hyp[j - 1]))
            j -= 1
    ops.reverse()
    return Alignment(tuple(ops), d[n][m])


# ─── Units and rates ─────────────────────────────────────────────────────────

def word_units(ipa: str, fold_aliases: bool = True) -> List[str]:
    """Whitespace-separated IPA words, each canonicalized (syllable dots dropped)."""
    seq = parse_ipa(ipa, strict=False, fold_aliases=fold_aliases)
    return ["".join(p.render() for p in word) for word in seq.words()]


def phone_units(ipa: str, fold_aliases: bool = True) -> List[str]:
    """Phones with their diacritics, separators excluded."""
    seq = parse_ipa(ipa, strict=False, fold_aliases=fold_aliases)
    return [p.render() for p in seq.segments()]


def char_units(ipa: str, fold_aliases: bool = True) -> List[str]:
    """Code points of the normalized IPA string."""
    return list(normalize_ipa(ipa, strict=False, fold_aliases=fold_aliases))


def error_rate(
    ref: Sequence[Hashable],
    hyp: Sequence[Hashable],
    warnings: Optional[List[str]] = None,
    strict: bool = False,
) -> Fraction:
    """
    Edit distance over reference length.

    An empty reference scores 0 against an empty hypothesis and
    len(hyp) otherwise; the latter is reported as a degenerate reference.

    Raises:
        DegenerateReferenceError: strict mode, empty reference, non-empty hypothesis
    """
    if not ref:
        if not hyp:
            return Fraction(0)
        message = f"DegenerateReference: empty reference, {len(hyp)} hypothesis units"
        if strict:
            raise DegenerateReferenceError(message)
        logger.warning(message, stage="Eval")
        if warnings is not None:
            warnings.append(message)
        return Fraction(len(hyp))
    return Fraction(edit_distance_alignment(ref, hyp).distance, len(ref))


def wer(ref_ipa: str, hyp_ipa: str, fold_aliases: bool = True,
        warnings: Optional[List[str]] = None, strict: bool = False) -> Fraction:
    """Word error rate on whitespace-separated IPA words."""
    return error_rate(word_units(ref_ipa, fold_aliases), word_units(hyp_ipa, fold_aliases), warnings, strict)


def per(ref_ipa: str, hyp_ipa: str, fold_aliases: bool = True,
        warnings: Optional[List[str]] = None, strict: bool = False) -> Fraction:
    """Phone error rate; a base and its diacritics form one unit."""
    return error_rate(phone_units(ref_ipa, fold_aliases), phone_units(hyp_ipa, fold_aliases), warnings, strict)


def cer(ref_ipa: str, hyp_ipa: str, fold_aliases: bool = True,
        warnings: Optional[List[str]] = None, strict: bool = False) -> Fraction:
    """Character error rate over code points of the normalized strings."""
    return error_rate(char_units(ref_ipa, fold_aliases), char_units(hyp_ipa, fold_aliases), warnings, strict)


# ─── Corpus ──────────────────────────────────────────────────────────────────

class CorpusRecord(BaseModel):
    """One parallel sentence."""
    model_config = ConfigDict(frozen=True)

    id: str = Field(..., min_length=1, description="Unique record id")
    text: str = Field(..., description="Bengali sentence (NFC)")
    ref_ipa: str = Field(..., description="Reference IPA transcription")
    line_no: Optional[int] = Field(default=None, description="Source line", exclude=True)


class ParallelCorpus:
    """Ordered records with unique ids."""

    def __init__(self, records: Iterable[CorpusRecord] = (), split: Optional[str] = None,
                 warnings: Optional[List[str]] = None):
        self.records: Tuple[CorpusRecord, ...] = tuple(records)
        self.split = split
        self.warnings: List[str] = list(warnings or [])
        seen: Set[str] = set()
        for r in self.records:
            if r.id in seen:
                raise DuplicateIdError(r.id, r.line_no)
            seen.add(r.id)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[CorpusRecord]:
        return iter(self.records)

    def __repr__(self) -> str:
        return f"ParallelCorpus(records={len(self)}, split={self.split!r})"

    def texts(self) -> List[str]:
        return [r.text for r in self.records]


def load_corpus(stream: Iterable[str], split: Optional[str] = None) -> ParallelCorpus:
    """
    Load an ``id<TAB>text<TAB>ipa`` corpus.

    Reference IPA is checked leniently; unknown glyphs become warnings.

    Args:
        stream: Iterable of text lines
        split: Optional split label (train/test/...)

    Returns:
        ParallelCorpus

    Raises:
        CorpusParseError: wrong column count or empty id
        DuplicateIdError: id seen twice
    """
    records: List[CorpusRecord] = []
    warnings: List[str] = []
    seen: Set[str] = set()
    for line_no, fields in iter_tsv(stream):
        if len(fields) != 3:
            raise CorpusParseError(line_no, f"expected 3 columns (id, text, ipa), got {len(fields)}")
        record_id, text, ipa = (f.strip() for f in fields)
        if not record_id:
            raise CorpusParseError(line_no, "empty id")
        if record_id in seen:
            raise DuplicateIdError(record_id, line_no)
        seen.add(record_id)
        unknown = unknown_symbols(parse_ipa(ipa, strict=False, fold_aliases=True))
        if unknown:
            glyphs = ", ".join(sorted({repr(sym) for _, sym in unknown}))
            message = f"line {line_no}: unknown IPA symbols {glyphs} in record {record_id!r}"
            logger.warning(message, stage="Corpus")
            warnings.append(message)
        records.append(CorpusRecord(id=record_id, text=nfc(text), ref_ipa=ipa, line_no=line_no))
    return ParallelCorpus(records, split=split, warnings=warnings)


def load_corpus_file(path: PathLike, split: Optional[str] = None) -> ParallelCorpus:
    """Load a corpus TSV from disk."""
    with open(path, "r", encoding="utf-8") as f:
        return load_corpus(f, split=split)


def source_words(text: str) -> List[str]:
    """Word tokens of a Bengali sentence."""
    return [t.text for t in tokenize(text) if t.kind is TokenKind.WORD]


def load_vocab(stream: Iterable[str]) -> Set[str]:
    """One word per line (first column); comments and blanks skipped."""
    return {nfc(fields[0].strip()) for _, fields in iter_tsv(stream) if fields[0].strip()}


def vocab_from_corpus(corpus: ParallelCorpus) -> Set[str]:
    """Every word token in a (training) corpus."""
    vocab: Set[str] = set()
    for r in corpus:
        vocab.update(source_words(r.text))
    return vocab


# ─── Evaluation ──────────────────────────────────────────────────────────────

def score_record(record: CorpusRecord, hyp_ipa: str, fold_aliases: bool = True) -> SentenceScore:
    """Edit counts for one record."""
    ref_w, hyp_w = word_units(record.ref_ipa, fold_aliases), word_units(hyp_ipa, fold_aliases)
    ref_p, hyp_p = phone_units(record.ref_ipa, fold_aliases), phone_units(hyp_ipa, fold_aliases)
    ref_c, hyp_c = char_units(record.ref_ipa, fold_aliases), char_units(hyp_ipa, fold_aliases)
    return SentenceScore(
        id=record.id,
        ref=" ".join(ref_w),
        hyp=" ".join(hyp_w),
        word_errors=edit_distance_alignment(ref_w, hyp_w).distance,
        ref_words=len(ref_w),
        phone_errors=edit_distance_alignment(ref_p, hyp_p).distance,
        ref_phones=len(ref_p),
        char_errors=edit_distance_alignment(ref_c, hyp_c).distance,
        ref_chars=len(ref_c),
    )


def _micro(errors: int, total: int, label: str, warnings: List[str]) -> float:
    if total:
        return float(Fraction(errors, total))
    if errors:
        message = f"DegenerateReference: no reference {label}, {errors} edits"
        logger.warning(message, stage="Eval")
        warnings.append(message)
        return float(errors)
    return 0.0


def evaluate_corpus(
    corpus: ParallelCorpus,
    engine=None,
    vocab: Optional[Set[str]] = None,
    fold_aliases: bool = True,
    hypotheses: Optional[Sequence[str]] = None,
) -> EvalReport:
    """
    Transcribe every record and score it against its reference.

    Args:
        corpus: Loaded corpus
        engine: G2PEngine; a default engine is built when omitted
        vocab: Training-side vocabulary for the OOV rate
        fold_aliases: Fold loose IPA glyphs on both sides before scoring
        hypotheses: Precomputed hypothesis IPA, one per record (parallel mode)

    Returns:
        EvalReport with micro-averaged rates
    """
    warnings: List[str] = list(corpus.warnings)
    if hypotheses is None:
        if engine is None:
            from .g2p import G2PEngine
            engine = G2PEngine()
        hypotheses = [_hypothesis(engine, r, warnings) for r in corpus]
    elif len(hypotheses) != len(corpus):
        raise ValueError(f"{len(hypotheses)} hypotheses for {len(corpus)} records")

    scores = [score_record(r, h, fold_aliases) for r, h in zip(corpus, hypotheses)]
    word_errors = sum(s.word_errors for s in scores)
    n_ref_words = sum(s.ref_words for s in scores)
    phone_errors = sum(s.phone_errors for s in scores)
    n_ref_phones = sum(s.ref_phones for s in scores)
    char_errors = sum(s.char_errors for s in scores)
    n_ref_chars = sum(s.ref_chars for s in scores)
    n_hyp_words = sum(len(word_units(h, fold_aliases)) for h in hypotheses)

    oov_rate: Optional[float] = None
    oov_words = 0
    if vocab is not None:
        words = [w for r in corpus for w in source_words(r.text)]
        oov_words = sum(1 for w in words if w not in vocab)
        oov_rate = float(Fraction(oov_words, len(words))) if words else 0.0

    report = EvalReport(
        wer=_micro(word_errors, n_ref_words, "words", warnings),
        per=_micro(phone_errors, n_ref_phones, "phones", warnings),
        cer=_micro(char_errors, n_ref_chars, "characters", warnings),
        n_sentences=len(scores),
        n_ref_words=n_ref_words,
        n_hyp_words=n_hyp_words,
        word_errors=word_errors,
        phone_errors=phone_errors,
        n_ref_phones=n_ref_phones,
        char_errors=char_errors,
        n_ref_chars=n_ref_chars,
        oov_rate=oov_rate,
        oov_words=oov_words,
        fold_aliases=fold_aliases,
        split=corpus.split,
        per_sentence=scores,
        warnings=warnings,
    )
    logger.info(report.summary_line(), stage="Eval")
    return report


def _hypothesis(engine, record: CorpusRecord, warnings: List[str]) -> str:
    try:
        result = engine.transcribe_sentence(record.text)
    except Exception as e:
        message = f"record {record.id!r}: transcription failed: {e}"
        logger.error(message, stage="Eval")
        warnings.append(message)
        return ""
    warnings.extend(f"record {record.id!r}: {w}" for w in result.warnings)
    return result.render()


def save_report(report: EvalReport, path: PathLike) -> None:
    """
    Write a report; ``.json`` gives the pydantic dump, anything else the
    key-value + table text document.
    """
    path = Path(path)
    if path.suffix.lower() == ".json":
        save_json_to_file(report.model_dump(mode="json"), path)
    else:
        save_text_to_file(report.to_text(), path)
